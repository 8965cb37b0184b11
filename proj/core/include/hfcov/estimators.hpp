#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hfcov/sync.hpp"
#include "hfcov/tick_series.hpp"

namespace hfcov {

enum class EstimatorKind { hy, subsample, multiscale };

const char* estimator_name(EstimatorKind kind);

// Weights of the multi-scale combination. Both constraints hold to 1e-12:
//   sum_i alpha[i] = 1      (unbiasedness)
//   sum_i alpha[i]/i = 0    (kills the leading noise term)
struct WeightVector {
  int m_scales = 0;
  std::vector<double> alpha;  // alpha[i-1] is the weight of lag i
};

struct EstimateReport {
  EstimatorKind kind = EstimatorKind::hy;
  double estimate = 0.0;
  std::size_t n_sync = 0;
  std::optional<int> tuning;  // K for subsample, M for multiscale
  std::optional<std::pair<double, double>> noise_variances_used;
};

// Realized covariance of the synchronized complexes,
//   sum_i (X[g_i] - X[l_i]) * (Y[gamma_i] - Y[lambda_i]).
// Equals the overlap double sum over all raw increment pairs.
double hy_estimate(const SyncGrid& grid, const TickSeries& x,
                   const TickSeries& y);

// Lag-K averaged sparse covariance,
//   (1/K) sum_{i=K..N} (X[g_i] - X[l_{i-K}]) * (Y[gamma_i] - Y[lambda_{i-K}]).
double subsample_estimate(const SyncGrid& grid, const TickSeries& x,
                          const TickSeries& y, int k);

// Exact finite-M weights alpha_i = 12 i^2/(M^3-M) - 6 i/((M-1)M).
WeightVector multiscale_weights(int m_scales);

// sum_{i=1..M} alpha_i * subsample_estimate(grid, x, y, i), accumulated with
// compensated summation in fixed lag order.
double multiscale_estimate(const SyncGrid& grid, const TickSeries& x,
                           const TickSeries& y, int m_scales);

// round(cbrt(3 etaX2 etaY2) * n^{2/3}) clamped to [1, n].
int optimal_k(std::size_t n_sync, double eta_x2, double eta_y2);

// round((36*35/52 * etaX2 etaY2)^{1/4} * sqrt(n)) clamped to [2, n].
int optimal_m(std::size_t n_sync, double eta_x2, double eta_y2);

// Plug-in noise variance sum(dv^2) / (2(n-1)); consistent when the
// observation error dominates the efficient-price moves.
double plugin_noise_variance(const TickSeries& series);

}  // namespace hfcov
