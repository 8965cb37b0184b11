#include "hfcov/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hfcov/accum.hpp"
#include "hfcov/errors.hpp"

namespace hfcov {

namespace {

void check_grid(const SyncGrid& grid, const TickSeries& x,
                const TickSeries& y) {
  if (grid.g.empty() || grid.g.size() != grid.l.size() ||
      grid.g.size() != grid.gamma.size() ||
      grid.g.size() != grid.lambda.size()) {
    raise(Errc::GridMismatch, "malformed grid index arrays");
  }
  if (grid.g.back() >= x.values.size() ||
      grid.gamma.back() >= y.values.size()) {
    raise(Errc::GridMismatch, "grid indices exceed series length");
  }
}

double lagged_product_sum(const SyncGrid& grid, const TickSeries& x,
                          const TickSeries& y, std::size_t lag) {
  CompensatedSum acc;
  const std::size_t n = grid.n_sync();
  for (std::size_t j = lag; j <= n; ++j) {
    const double dx = x.values[grid.g[j]] - x.values[grid.l[j - lag]];
    const double dy = y.values[grid.gamma[j]] - y.values[grid.lambda[j - lag]];
    acc.add(dx * dy);
  }
  return acc.value();
}

}  // namespace

const char* estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::hy:
      return "hy";
    case EstimatorKind::subsample:
      return "subsample";
    case EstimatorKind::multiscale:
      return "multiscale";
  }
  return "?";
}

double hy_estimate(const SyncGrid& grid, const TickSeries& x,
                   const TickSeries& y) {
  check_grid(grid, x, y);
  CompensatedSum acc;
  for (std::size_t i = 0; i < grid.g.size(); ++i) {
    const double dx = x.values[grid.g[i]] - x.values[grid.l[i]];
    const double dy = y.values[grid.gamma[i]] - y.values[grid.lambda[i]];
    acc.add(dx * dy);
  }
  return acc.value();
}

double subsample_estimate(const SyncGrid& grid, const TickSeries& x,
                          const TickSeries& y, int k) {
  check_grid(grid, x, y);
  const std::size_t n = grid.n_sync();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    raise(Errc::TuningOutOfRange, "K=" + std::to_string(k) +
                                      " outside [1, n_sync=" +
                                      std::to_string(n) + "]");
  }
  return lagged_product_sum(grid, x, y, static_cast<std::size_t>(k)) / k;
}

WeightVector multiscale_weights(int m_scales) {
  if (m_scales < 2) {
    raise(Errc::TuningOutOfRange,
          "M=" + std::to_string(m_scales) + " but the weights need M >= 2");
  }
  WeightVector w;
  w.m_scales = m_scales;
  w.alpha.resize(static_cast<std::size_t>(m_scales));
  const double md = static_cast<double>(m_scales);
  const double cubic = md * md * md - md;   // M^3 - M
  const double pair = (md - 1.0) * md;      // (M-1) M
  for (int i = 1; i <= m_scales; ++i) {
    const double id = static_cast<double>(i);
    w.alpha[static_cast<std::size_t>(i - 1)] =
        12.0 * id * id / cubic - 6.0 * id / pair;
  }
  return w;
}

double multiscale_estimate(const SyncGrid& grid, const TickSeries& x,
                           const TickSeries& y, int m_scales) {
  check_grid(grid, x, y);
  const std::size_t n = grid.n_sync();
  if (m_scales < 2 || static_cast<std::size_t>(m_scales) > n) {
    raise(Errc::TuningOutOfRange, "M=" + std::to_string(m_scales) +
                                      " outside [2, n_sync=" +
                                      std::to_string(n) + "]");
  }
  const WeightVector w = multiscale_weights(m_scales);
  CompensatedSum acc;
  for (int i = 1; i <= m_scales; ++i) {
    const double sub =
        lagged_product_sum(grid, x, y, static_cast<std::size_t>(i)) / i;
    acc.add(w.alpha[static_cast<std::size_t>(i - 1)] * sub);
  }
  return acc.value();
}

namespace {

void check_noise_inputs(std::size_t n_sync, double eta_x2, double eta_y2) {
  if (n_sync < 1) {
    raise(Errc::ParameterOutOfRange, "n_sync must be >= 1");
  }
  if (eta_x2 < 0.0 || eta_y2 < 0.0) {
    raise(Errc::NegativeVariance, "noise variances must be >= 0");
  }
}

}  // namespace

int optimal_k(std::size_t n_sync, double eta_x2, double eta_y2) {
  check_noise_inputs(n_sync, eta_x2, eta_y2);
  const double n = static_cast<double>(n_sync);
  const double value = std::cbrt(3.0 * eta_x2 * eta_y2) * std::pow(n, 2.0 / 3.0);
  long long k = std::llround(value);
  k = std::max<long long>(1, std::min<long long>(k, static_cast<long long>(n_sync)));
  return static_cast<int>(k);
}

int optimal_m(std::size_t n_sync, double eta_x2, double eta_y2) {
  check_noise_inputs(n_sync, eta_x2, eta_y2);
  const double n = static_cast<double>(n_sync);
  const double value =
      std::pow(36.0 * 35.0 / 52.0 * eta_x2 * eta_y2, 0.25) * std::sqrt(n);
  long long m = std::llround(value);
  m = std::min<long long>(m, static_cast<long long>(n_sync));
  m = std::max<long long>(2, m);
  return static_cast<int>(m);
}

double plugin_noise_variance(const TickSeries& series) {
  if (series.values.size() < 2) {
    raise(Errc::EmptySeries, "need at least 2 observations");
  }
  CompensatedSum acc;
  for (std::size_t i = 1; i < series.values.size(); ++i) {
    const double d = series.values[i] - series.values[i - 1];
    acc.add(d * d);
  }
  return acc.value() / (2.0 * static_cast<double>(series.values.size() - 1));
}

}  // namespace hfcov
