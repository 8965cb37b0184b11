#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hfcov/estimators.hpp"
#include "hfcov/rng.hpp"
#include "hfcov/tick_series.hpp"

namespace hfcov {

// Synthetic market: two Poisson observation grids over [0, horizon], one
// pair of correlated Brownian efficient prices, i.i.d. Gaussian noise per
// tick. theta_* are the mean inter-arrival times.
struct SimConfig {
  double horizon = 1.0;
  double theta_x = 1.0 / 3000.0;
  double theta_y = 1.0 / 3000.0;
  double rho = 0.5;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  double eta_x2 = 0.01;
  double eta_y2 = 0.01;
  std::uint64_t seed = 1;
  int replications = 200;
};

void validate(const SimConfig& cfg);

struct SimulatedPair {
  TickSeries x;
  TickSeries y;
  double true_cov = 0.0;  // rho * sigma_x * sigma_y * horizon
  // Diagnostics: the single efficient path pair sampled on the merged grid.
  std::vector<double> union_times;
  std::vector<double> efficient_x;
  std::vector<double> efficient_y;
};

// 0 followed by cumulative Exp(mean = theta) arrivals truncated at horizon.
// Throws DegenerateConfig when theta is so large that almost no arrivals
// can be expected (theta >= 10 * horizon) or not positive.
std::vector<double> poisson_times(double theta, double horizon,
                                  RngStream& rng);

// Draws both tick grids, simulates the efficient pair exactly on the merged
// grid (constant coefficients, no discretization error) and adds noise at
// each series' own observation times.
SimulatedPair simulate_pair(const SimConfig& cfg, RngStream& rng);

// Expected number of synchronized complexes for two independent Poisson
// grids: horizon / (tx + ty - tx*ty/(tx+ty)).
double expected_sync_count(double theta_x, double theta_y,
                           double horizon = 1.0);

enum class TuningPolicy { oracle, plugin, manual };

struct EstimatorSelection {
  bool use_hy = true;
  bool use_subsample = true;
  bool use_multiscale = true;
  TuningPolicy policy = TuningPolicy::oracle;
  std::optional<int> manual_k;
  std::optional<int> manual_m;

  std::vector<EstimatorKind> kinds() const;
};

struct RepRecord {
  int replication = 0;
  EstimatorKind kind = EstimatorKind::hy;
  double estimate = 0.0;
  std::size_t n_sync = 0;
  int tuning = 0;  // 0 for HY
};

struct EstimatorStats {
  EstimatorKind kind = EstimatorKind::hy;
  double mean = 0.0;
  double bias = 0.0;
  double variance = 0.0;  // population variance over replications
  double rmse = 0.0;      // sqrt(bias^2 + variance)
  double mean_tuning = 0.0;
  double mean_nsync = 0.0;
};

struct McResult {
  SimConfig config;
  double true_cov = 0.0;
  std::vector<RepRecord> records;  // replication-major, selection order
  std::vector<EstimatorStats> summary;
};

// Runs cfg.replications independent replications (parallel when threads != 1)
// and aggregates in replication order, so the result is a pure function of
// the config regardless of thread count. threads <= 0 picks the hardware
// concurrency.
McResult run_experiment(const SimConfig& cfg, const EstimatorSelection& sel,
                        int threads = 0);

}  // namespace hfcov
