#include "hfcov/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <thread>

#include "hfcov/accum.hpp"
#include "hfcov/errors.hpp"
#include "hfcov/sync.hpp"

namespace hfcov {

void validate(const SimConfig& cfg) {
  if (!(cfg.horizon > 0.0)) {
    raise(Errc::ParameterOutOfRange, "horizon must be > 0");
  }
  if (!(cfg.theta_x > 0.0) || !(cfg.theta_y > 0.0)) {
    raise(Errc::DegenerateConfig, "mean inter-arrival times must be > 0");
  }
  if (std::abs(cfg.rho) > 1.0) {
    raise(Errc::ParameterOutOfRange, "|rho| must be <= 1");
  }
  if (cfg.sigma_x < 0.0 || cfg.sigma_y < 0.0) {
    raise(Errc::ParameterOutOfRange, "volatilities must be >= 0");
  }
  if (cfg.eta_x2 < 0.0 || cfg.eta_y2 < 0.0) {
    raise(Errc::NegativeVariance, "noise variances must be >= 0");
  }
  if (cfg.replications < 1) {
    raise(Errc::ParameterOutOfRange, "replications must be >= 1");
  }
}

std::vector<double> poisson_times(double theta, double horizon,
                                  RngStream& rng) {
  if (!(theta > 0.0) || !(horizon > 0.0)) {
    raise(Errc::DegenerateConfig, "theta and horizon must be > 0");
  }
  if (theta >= horizon * 10.0) {
    // fewer than ~0.1 expected arrivals: almost surely a unit mix-up
    raise(Errc::DegenerateConfig,
          "mean inter-arrival time " + std::to_string(theta) +
              " is >= 10x the horizon " + std::to_string(horizon));
  }
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(horizon / theta * 1.1) + 2);
  times.push_back(0.0);
  double s = 0.0;
  while (true) {
    s += rng.exponential(theta);
    if (s > horizon) break;
    times.push_back(s);
  }
  return times;
}

SimulatedPair simulate_pair(const SimConfig& cfg, RngStream& rng) {
  validate(cfg);
  SimulatedPair out;
  out.x.times = poisson_times(cfg.theta_x, cfg.horizon, rng);
  out.y.times = poisson_times(cfg.theta_y, cfg.horizon, rng);
  out.true_cov = cfg.rho * cfg.sigma_x * cfg.sigma_y * cfg.horizon;

  std::vector<double>& u = out.union_times;
  u.resize(out.x.times.size() + out.y.times.size());
  std::merge(out.x.times.begin(), out.x.times.end(), out.y.times.begin(),
             out.y.times.end(), u.begin());
  u.erase(std::unique(u.begin(), u.end()), u.end());

  // One latent path pair over the merged grid, exact Gaussian increments.
  const double rho_c = std::sqrt(std::max(0.0, 1.0 - cfg.rho * cfg.rho));
  std::vector<double>& px = out.efficient_x;
  std::vector<double>& py = out.efficient_y;
  px.resize(u.size());
  py.resize(u.size());
  px[0] = 0.0;
  py[0] = 0.0;
  double bx = 0.0;
  double bc = 0.0;
  for (std::size_t k = 1; k < u.size(); ++k) {
    const double sd = std::sqrt(u[k] - u[k - 1]);
    const double zx = rng.normal();
    const double zc = rng.normal();
    bx += sd * zx;
    bc += sd * (cfg.rho * zx + rho_c * zc);
    px[k] = cfg.sigma_x * bx;
    py[k] = cfg.sigma_y * bc;
  }

  const double eta_x = std::sqrt(cfg.eta_x2);
  const double eta_y = std::sqrt(cfg.eta_y2);

  out.x.values.resize(out.x.times.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < out.x.times.size(); ++i) {
    while (u[j] < out.x.times[i]) ++j;
    out.x.values[i] = px[j] + (eta_x > 0.0 ? eta_x * rng.normal() : 0.0);
  }
  out.y.values.resize(out.y.times.size());
  j = 0;
  for (std::size_t i = 0; i < out.y.times.size(); ++i) {
    while (u[j] < out.y.times[i]) ++j;
    out.y.values[i] = py[j] + (eta_y > 0.0 ? eta_y * rng.normal() : 0.0);
  }
  return out;
}

double expected_sync_count(double theta_x, double theta_y, double horizon) {
  if (!(theta_x > 0.0) || !(theta_y > 0.0)) {
    raise(Errc::ParameterOutOfRange, "mean inter-arrival times must be > 0");
  }
  const double theta =
      theta_x + theta_y - theta_x * theta_y / (theta_x + theta_y);
  return horizon / theta;
}

std::vector<EstimatorKind> EstimatorSelection::kinds() const {
  std::vector<EstimatorKind> out;
  if (use_hy) out.push_back(EstimatorKind::hy);
  if (use_subsample) out.push_back(EstimatorKind::subsample);
  if (use_multiscale) out.push_back(EstimatorKind::multiscale);
  return out;
}

namespace {

int pick_tuning(EstimatorKind kind, const EstimatorSelection& sel,
                std::size_t n_sync, double eta_x2, double eta_y2) {
  if (sel.policy == TuningPolicy::manual) {
    const std::optional<int>& manual =
        kind == EstimatorKind::subsample ? sel.manual_k : sel.manual_m;
    if (!manual) {
      raise(Errc::UsageError,
            std::string("manual tuning selected but no value given for ") +
                estimator_name(kind));
    }
    return *manual;
  }
  return kind == EstimatorKind::subsample
             ? optimal_k(n_sync, eta_x2, eta_y2)
             : optimal_m(n_sync, eta_x2, eta_y2);
}

void run_one(const SimConfig& cfg, const EstimatorSelection& sel,
             const std::vector<EstimatorKind>& kinds, int rep,
             RepRecord* slot) {
  RngStream rng = RngStream::for_replication(cfg.seed,
                                             static_cast<std::uint64_t>(rep));
  const SimulatedPair sim = simulate_pair(cfg, rng);
  const SyncGrid grid = synchronize(sim.x, sim.y);
  const std::size_t n_sync = grid.n_sync();

  double ex2 = cfg.eta_x2;
  double ey2 = cfg.eta_y2;
  if (sel.policy == TuningPolicy::plugin) {
    ex2 = plugin_noise_variance(sim.x);
    ey2 = plugin_noise_variance(sim.y);
  }

  for (EstimatorKind kind : kinds) {
    RepRecord rec;
    rec.replication = rep;
    rec.kind = kind;
    rec.n_sync = n_sync;
    switch (kind) {
      case EstimatorKind::hy:
        rec.tuning = 0;
        rec.estimate = hy_estimate(grid, sim.x, sim.y);
        break;
      case EstimatorKind::subsample:
        rec.tuning = pick_tuning(kind, sel, n_sync, ex2, ey2);
        rec.estimate = subsample_estimate(grid, sim.x, sim.y, rec.tuning);
        break;
      case EstimatorKind::multiscale:
        rec.tuning = pick_tuning(kind, sel, n_sync, ex2, ey2);
        rec.estimate = multiscale_estimate(grid, sim.x, sim.y, rec.tuning);
        break;
    }
    *slot++ = rec;
  }
}

}  // namespace

McResult run_experiment(const SimConfig& cfg, const EstimatorSelection& sel,
                        int threads) {
  validate(cfg);
  const std::vector<EstimatorKind> kinds = sel.kinds();
  if (kinds.empty()) {
    raise(Errc::UsageError, "no estimator selected");
  }

  McResult result;
  result.config = cfg;
  result.true_cov = cfg.rho * cfg.sigma_x * cfg.sigma_y * cfg.horizon;
  const int reps = cfg.replications;
  result.records.resize(static_cast<std::size_t>(reps) * kinds.size());

  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  threads = std::min(threads, reps);

  if (threads == 1) {
    for (int rep = 0; rep < reps; ++rep) {
      run_one(cfg, sel, kinds, rep,
              &result.records[static_cast<std::size_t>(rep) * kinds.size()]);
    }
  } else {
    // Per-replication streams make the parallel run draw the same numbers
    // as the serial one; each worker fills disjoint record slots.
    std::vector<std::future<void>> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      workers.push_back(std::async(std::launch::async, [&, w]() {
        for (int rep = w; rep < reps; rep += threads) {
          run_one(cfg, sel, kinds, rep,
                  &result.records[static_cast<std::size_t>(rep) * kinds.size()]);
        }
      }));
    }
    for (auto& worker : workers) worker.get();
  }

  // Ordered reduction over replications, one pass per estimator.
  for (std::size_t e = 0; e < kinds.size(); ++e) {
    CompensatedSum mean_acc;
    CompensatedSum tuning_acc;
    CompensatedSum nsync_acc;
    for (int rep = 0; rep < reps; ++rep) {
      const RepRecord& rec =
          result.records[static_cast<std::size_t>(rep) * kinds.size() + e];
      mean_acc.add(rec.estimate);
      tuning_acc.add(static_cast<double>(rec.tuning));
      nsync_acc.add(static_cast<double>(rec.n_sync));
    }
    EstimatorStats stats;
    stats.kind = kinds[e];
    stats.mean = mean_acc.value() / reps;
    stats.mean_tuning = tuning_acc.value() / reps;
    stats.mean_nsync = nsync_acc.value() / reps;
    CompensatedSum var_acc;
    for (int rep = 0; rep < reps; ++rep) {
      const RepRecord& rec =
          result.records[static_cast<std::size_t>(rep) * kinds.size() + e];
      const double d = rec.estimate - stats.mean;
      var_acc.add(d * d);
    }
    stats.variance = var_acc.value() / reps;
    stats.bias = stats.mean - result.true_cov;
    stats.rmse = std::sqrt(stats.bias * stats.bias + stats.variance);
    result.summary.push_back(stats);
  }
  return result;
}

}  // namespace hfcov
