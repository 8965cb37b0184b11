#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hfcov/simulation.hpp"
#include "hfcov/tick_io.hpp"

namespace hfcov::cli {

struct EstimateConfig {
  std::string x_path;
  std::string y_path;
  std::string out_path;
  std::string format = "csv";  // csv | json
  EstimatorSelection selection;
  // Oracle-policy noise variances feeding the tuning rules (real data has no
  // ground truth, so they must be supplied explicitly).
  std::optional<double> eta_x2;
  std::optional<double> eta_y2;
  CsvOptions csv;
};

struct SimulateConfig {
  SimConfig sim;
  std::string out_path;
  int threads = 0;
  EstimatorSelection selection;
};

struct LanConfig {
  double rho = 0.0;
  double eta_x = 0.1;
  double eta_y = 0.1;
  double h = 1.0;
  std::vector<std::size_t> n_list;
  std::string out_path;
};

// Comma list of hy|sub|multi -> selection flags. Throws UsageError.
void apply_estimator_list(const std::string& list, EstimatorSelection& sel);

// oracle | plugin | K=<int> | M=<int> (manual K and M may be combined with
// a comma). Throws UsageError.
void apply_tuning_spec(const std::string& spec, EstimatorSelection& sel);

void cmd_estimate(const EstimateConfig& cfg, std::ostream& console);
void cmd_simulate(const SimulateConfig& cfg, std::ostream& console);
void cmd_lan(const LanConfig& cfg, std::ostream& console);

// Full argv entry point; maps library errors to exit code 1 and prints a
// single "error: <Code>: <message>" line on stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace hfcov::cli
