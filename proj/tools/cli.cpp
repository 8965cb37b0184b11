#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hfcov/errors.hpp"
#include "hfcov/lan.hpp"
#include "hfcov/sync.hpp"

namespace hfcov::cli {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    raise(Errc::ParseError, "cannot open output file '" + path + "'");
  }
  return out;
}

int parse_manual_value(const std::string& token) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token.substr(2), &used);
    if (used + 2 != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    raise(Errc::UsageError, "bad manual tuning value in '" + token + "'");
  }
}

}  // namespace

void apply_estimator_list(const std::string& list, EstimatorSelection& sel) {
  sel.use_hy = sel.use_subsample = sel.use_multiscale = false;
  std::stringstream stream(list);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token == "hy") {
      sel.use_hy = true;
    } else if (token == "sub") {
      sel.use_subsample = true;
    } else if (token == "multi") {
      sel.use_multiscale = true;
    } else {
      raise(Errc::UsageError, "unknown estimator '" + token +
                                  "' (expected hy, sub or multi)");
    }
  }
  if (!sel.use_hy && !sel.use_subsample && !sel.use_multiscale) {
    raise(Errc::UsageError, "empty estimator selection");
  }
}

void apply_tuning_spec(const std::string& spec, EstimatorSelection& sel) {
  if (spec == "oracle") {
    sel.policy = TuningPolicy::oracle;
    return;
  }
  if (spec == "plugin") {
    sel.policy = TuningPolicy::plugin;
    return;
  }
  sel.policy = TuningPolicy::manual;
  std::stringstream stream(spec);
  std::string token;
  bool any = false;
  while (std::getline(stream, token, ',')) {
    if (token.rfind("K=", 0) == 0) {
      sel.manual_k = parse_manual_value(token);
    } else if (token.rfind("M=", 0) == 0) {
      sel.manual_m = parse_manual_value(token);
    } else {
      raise(Errc::UsageError,
            "bad tuning spec '" + token +
                "' (expected oracle, plugin, K=<int> or M=<int>)");
    }
    any = true;
  }
  if (!any) raise(Errc::UsageError, "empty tuning spec");
}

namespace {

void write_reports_csv(std::ostream& out,
                       const std::vector<EstimateReport>& reports) {
  out << "estimator,estimate,n_sync,tuning,eta2_x_used,eta2_y_used\n";
  for (const EstimateReport& r : reports) {
    out << estimator_name(r.kind) << ',' << format_full(r.estimate) << ','
        << r.n_sync << ',';
    if (r.tuning) out << *r.tuning;
    out << ',';
    if (r.noise_variances_used) out << format_full(r.noise_variances_used->first);
    out << ',';
    if (r.noise_variances_used) out << format_full(r.noise_variances_used->second);
    out << '\n';
  }
}

void write_reports_json(std::ostream& out,
                        const std::vector<EstimateReport>& reports) {
  nlohmann::ordered_json doc;
  doc["reports"] = nlohmann::ordered_json::array();
  for (const EstimateReport& r : reports) {
    nlohmann::ordered_json item;
    item["estimator"] = estimator_name(r.kind);
    item["estimate"] = r.estimate;
    item["n_sync"] = r.n_sync;
    if (r.tuning) item["tuning"] = *r.tuning;
    if (r.noise_variances_used) {
      item["eta2_x_used"] = r.noise_variances_used->first;
      item["eta2_y_used"] = r.noise_variances_used->second;
    }
    doc["reports"].push_back(std::move(item));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace

void cmd_estimate(const EstimateConfig& cfg, std::ostream& console) {
  if (cfg.format != "csv" && cfg.format != "json") {
    raise(Errc::UsageError, "format must be csv or json");
  }
  const TickSeries x = ingest_ticks(cfg.x_path, cfg.csv);
  const TickSeries y = ingest_ticks(cfg.y_path, cfg.csv);
  const SyncGrid grid = synchronize(x, y);
  const std::size_t n_sync = grid.n_sync();

  const bool needs_tuning = cfg.selection.use_subsample ||
                            cfg.selection.use_multiscale;
  double ex2 = 0.0;
  double ey2 = 0.0;
  if (needs_tuning && cfg.selection.policy == TuningPolicy::oracle) {
    if (!cfg.eta_x2 || !cfg.eta_y2) {
      raise(Errc::UsageError,
            "tuning policy 'oracle' needs --eta2-x and --eta2-y");
    }
    ex2 = *cfg.eta_x2;
    ey2 = *cfg.eta_y2;
  } else if (needs_tuning && cfg.selection.policy == TuningPolicy::plugin) {
    ex2 = plugin_noise_variance(x);
    ey2 = plugin_noise_variance(y);
  }

  std::vector<EstimateReport> reports;
  for (EstimatorKind kind : cfg.selection.kinds()) {
    EstimateReport report;
    report.kind = kind;
    report.n_sync = n_sync;
    switch (kind) {
      case EstimatorKind::hy:
        report.estimate = hy_estimate(grid, x, y);
        break;
      case EstimatorKind::subsample: {
        int k = 0;
        if (cfg.selection.policy == TuningPolicy::manual) {
          if (!cfg.selection.manual_k) {
            raise(Errc::UsageError, "manual tuning needs K=<int>");
          }
          k = *cfg.selection.manual_k;
        } else {
          k = optimal_k(n_sync, ex2, ey2);
          report.noise_variances_used = {ex2, ey2};
        }
        report.tuning = k;
        report.estimate = subsample_estimate(grid, x, y, k);
        break;
      }
      case EstimatorKind::multiscale: {
        int m = 0;
        if (cfg.selection.policy == TuningPolicy::manual) {
          if (!cfg.selection.manual_m) {
            raise(Errc::UsageError, "manual tuning needs M=<int>");
          }
          m = *cfg.selection.manual_m;
        } else {
          m = optimal_m(n_sync, ex2, ey2);
          report.noise_variances_used = {ex2, ey2};
        }
        report.tuning = m;
        report.estimate = multiscale_estimate(grid, x, y, m);
        break;
      }
    }
    reports.push_back(report);
  }

  std::ofstream out = open_output(cfg.out_path);
  if (cfg.format == "csv") {
    write_reports_csv(out, reports);
  } else {
    write_reports_json(out, reports);
  }
  console << "wrote " << reports.size() << " report(s) to " << cfg.out_path
          << " (n_sync=" << n_sync << ")\n";
}

void cmd_simulate(const SimulateConfig& cfg, std::ostream& console) {
  const McResult result = run_experiment(cfg.sim, cfg.selection, cfg.threads);

  std::ofstream out = open_output(cfg.out_path);
  out << "rep,estimator,estimate,n_sync,tuning\n";
  for (const RepRecord& rec : result.records) {
    out << rec.replication << ',' << estimator_name(rec.kind) << ','
        << format_full(rec.estimate) << ',' << rec.n_sync << ',' << rec.tuning
        << '\n';
  }

  console << "estimator,mean,bias,variance,rmse,mean_tuning,mean_nsync\n";
  for (const EstimatorStats& s : result.summary) {
    console << estimator_name(s.kind) << ',' << format_full(s.mean) << ','
            << format_full(s.bias) << ',' << format_full(s.variance) << ','
            << format_full(s.rmse) << ',' << format_full(s.mean_tuning) << ','
            << format_full(s.mean_nsync) << '\n';
  }
}

void cmd_lan(const LanConfig& cfg, std::ostream& console) {
  if (cfg.n_list.empty()) {
    raise(Errc::UsageError, "--n-list needs at least one entry");
  }
  std::ofstream out = open_output(cfg.out_path);
  const bool equal = cfg.eta_x == cfg.eta_y;
  const double h2 = 2.0 * cfg.h * cfg.h;

  auto rel_error = [](double value, double target) {
    if (target == 0.0) return value == 0.0 ? 0.0 : HUGE_VAL;
    return std::abs(value / target - 1.0);
  };

  if (equal) {
    const double target = h2 * fisher_info_equal(cfg.rho, cfg.eta_x);
    out << "n,sum_gamma_sq,target,rel_error\n";
    for (std::size_t n : cfg.n_list) {
      const LanProfile profile =
          make_lan_profile(cfg.rho, cfg.eta_x, cfg.eta_y, n, cfg.h);
      const double sum = gamma_sq_sum(profile);
      out << n << ',' << format_full(sum) << ',' << format_full(target) << ','
          << format_full(rel_error(sum, target)) << '\n';
    }
  } else {
    const Bracket info = fisher_info_bounds(cfg.rho, cfg.eta_x, cfg.eta_y);
    const double target_lower = h2 * info.lower;
    const double target_upper = h2 * info.upper;
    out << "n,sum_gamma_sq_lower,sum_gamma_sq_upper,target_lower,"
           "target_upper,rel_error_lower,rel_error_upper\n";
    for (std::size_t n : cfg.n_list) {
      const LanProfile profile =
          make_lan_profile(cfg.rho, cfg.eta_x, cfg.eta_y, n, cfg.h);
      const Bracket sum = gamma_sq_sum_bounds(profile);
      out << n << ',' << format_full(sum.lower) << ','
          << format_full(sum.upper) << ',' << format_full(target_lower) << ','
          << format_full(target_upper) << ','
          << format_full(rel_error(sum.lower, target_lower)) << ','
          << format_full(rel_error(sum.upper, target_upper)) << '\n';
    }
  }
  console << "wrote " << cfg.n_list.size() << " row(s) to " << cfg.out_path
          << '\n';
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"hfcov: integrated covariance estimation for asynchronous "
               "noisy tick data"};
  app.set_config("--config");
  app.require_subcommand(0, 1);

  EstimateConfig est;
  std::string est_estimators = "hy,sub,multi";
  std::string est_tuning = "plugin";
  std::string est_delimiter = ",";
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Estimate the integrated covariance from two tick files");
  estimate->add_option("--x", est.x_path, "X tick CSV path")->required();
  estimate->add_option("--y", est.y_path, "Y tick CSV path")->required();
  estimate->add_option("--estimators", est_estimators,
                       "Comma list of hy,sub,multi");
  estimate->add_option("--tuning", est_tuning,
                       "oracle | plugin | K=<int> | M=<int>");
  estimate->add_option("--eta2-x", est.eta_x2,
                       "Known X noise variance (oracle tuning)");
  estimate->add_option("--eta2-y", est.eta_y2,
                       "Known Y noise variance (oracle tuning)");
  estimate->add_option("--out", est.out_path, "Output path")->required();
  estimate->add_option("--format", est.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  estimate->add_flag("--dedup", est.csv.dedup,
                     "Last-wins dedup of equal timestamps");
  estimate->add_flag("--header", est.csv.skip_header,
                     "Skip one header row in the inputs");
  estimate->add_option("--delimiter", est_delimiter,
                       "Single-character column delimiter");

  SimulateConfig simc;
  std::string sim_estimators = "hy,sub,multi";
  std::string sim_tuning = "oracle";
  bool paper_scale = false;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo comparison on synthetic noisy ticks");
  simulate->add_option("--theta-x", simc.sim.theta_x,
                       "Mean X inter-arrival time");
  simulate->add_option("--theta-y", simc.sim.theta_y,
                       "Mean Y inter-arrival time");
  simulate->add_option("--rho", simc.sim.rho, "Correlation");
  simulate->add_option("--sigma-x", simc.sim.sigma_x, "X volatility");
  simulate->add_option("--sigma-y", simc.sim.sigma_y, "Y volatility");
  simulate->add_option("--eta2-x", simc.sim.eta_x2, "X noise variance");
  simulate->add_option("--eta2-y", simc.sim.eta_y2, "Y noise variance");
  simulate->add_option("--horizon", simc.sim.horizon, "Time horizon T");
  simulate->add_option("--reps", simc.sim.replications, "Replications");
  simulate->add_option("--seed", simc.sim.seed, "Master seed");
  simulate->add_option("--out", simc.out_path,
                       "Per-replication CSV output path")
      ->required();
  simulate->add_option("--estimators", sim_estimators,
                       "Comma list of hy,sub,multi");
  simulate->add_option("--tuning", sim_tuning,
                       "oracle | plugin | K=<int> | M=<int>");
  simulate->add_option("--threads", simc.threads,
                       "Worker threads (0 = hardware)");
  simulate->add_flag("--paper-scale", paper_scale,
                     "Full-scale defaults: 30000 expected ticks per asset, "
                     "1000 replications, rho 0.5, eta^2 sqrt(0.1)");

  LanConfig lanc;
  CLI::App* lan = app.add_subcommand(
      "lan", "Fisher-information convergence table for the synchronous "
             "parametric model");
  lan->set_help_flag("--help", "Print this help message and exit");
  lan->add_option("--rho", lanc.rho, "Correlation")->required();
  lan->add_option("--eta-x", lanc.eta_x, "X noise standard deviation")
      ->required();
  lan->add_option("--eta-y", lanc.eta_y, "Y noise standard deviation")
      ->required();
  lan->add_option("--h", lanc.h, "Local perturbation")->required();
  lan->add_option("--n-list", lanc.n_list, "Comma list of sample sizes")
      ->required()
      ->delimiter(',');
  lan->add_option("--out", lanc.out_path, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: UsageError: " << e.what() << '\n';
    return 2;
  }

  try {
    if (estimate->parsed()) {
      apply_estimator_list(est_estimators, est.selection);
      apply_tuning_spec(est_tuning, est.selection);
      if (est_delimiter.size() != 1) {
        raise(Errc::UsageError, "--delimiter must be a single character");
      }
      est.csv.delimiter = est_delimiter[0];
      cmd_estimate(est, std::cout);
      return 0;
    }
    if (simulate->parsed()) {
      if (paper_scale) {
        if (!simulate->count("--theta-x")) simc.sim.theta_x = 1.0 / 30000.0;
        if (!simulate->count("--theta-y")) simc.sim.theta_y = 1.0 / 30000.0;
        if (!simulate->count("--eta2-x")) simc.sim.eta_x2 = std::sqrt(0.1);
        if (!simulate->count("--eta2-y")) simc.sim.eta_y2 = std::sqrt(0.1);
        if (!simulate->count("--rho")) simc.sim.rho = 0.5;
        if (!simulate->count("--reps")) simc.sim.replications = 1000;
      }
      apply_estimator_list(sim_estimators, simc.selection);
      apply_tuning_spec(sim_tuning, simc.selection);
      cmd_simulate(simc, std::cout);
      return 0;
    }
    if (lan->parsed()) {
      cmd_lan(lanc, std::cout);
      return 0;
    }
    std::cerr << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.code_name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hfcov::cli
