#include "hfcov/sync.hpp"

#include <algorithm>
#include <string>

#include "hfcov/errors.hpp"

namespace hfcov {

namespace {

void push_entry(SyncGrid& grid, std::size_t g, std::size_t l,
                std::size_t gamma, std::size_t lambda) {
  grid.g.push_back(g);
  grid.l.push_back(l);
  grid.gamma.push_back(gamma);
  grid.lambda.push_back(lambda);
}

}  // namespace

SyncGrid synchronize(const TickSeries& x, const TickSeries& y) {
  validate(x);
  validate(y);

  const std::vector<double>& t = x.times;
  const std::vector<double>& tau = y.times;
  const std::size_t n = t.size() - 1;
  const std::size_t m = tau.size() - 1;

  SyncGrid grid;
  const std::size_t expect = std::min(n, m) + 2;
  grid.g.reserve(expect);
  grid.l.reserve(expect);
  grid.gamma.reserve(expect);
  grid.lambda.reserve(expect);

  // q, r point at the earliest not-yet-grouped observation on each side.
  // Invariant between steps: t[q] > tau[r-1] and tau[r] > t[q-1], so every
  // increment ending at or after the pending tick still overlaps the other
  // side's pending increment.
  std::size_t q = 0;
  std::size_t r = 0;

  while (true) {
    if (q > n && r > m) break;
    if (q > n) {
      // X consumed; park the leftover Y ticks against a zero-width X
      // increment so they never multiply into the sums.
      push_entry(grid, n, n, m, r - 1);
      break;
    }
    if (r > m) {
      push_entry(grid, n, q - 1, m, m);
      break;
    }

    const std::size_t li = q == 0 ? 0 : q - 1;
    const std::size_t di = r == 0 ? 0 : r - 1;

    if (t[q] < tau[r]) {
      // Group X ticks up to the one bracketing tau[r].
      std::size_t w = q + 1;
      while (w <= n && t[w] < tau[r]) ++w;
      if (w > n) {
        // Every remaining X tick lies below tau[r]: all of them overlap the
        // pending Y increment, none overlaps any later one.
        push_entry(grid, n, li, r, di);
        q = n + 1;
        ++r;
        continue;
      }
      push_entry(grid, w, li, r, di);
      q = (t[w] == tau[r]) ? w + 1 : w;
      ++r;
    } else if (t[q] > tau[r]) {
      std::size_t v = r + 1;
      while (v <= m && tau[v] < t[q]) ++v;
      if (v > m) {
        push_entry(grid, q, li, m, di);
        r = m + 1;
        ++q;
        continue;
      }
      push_entry(grid, q, li, v, di);
      r = (tau[v] == t[q]) ? v + 1 : v;
      ++q;
    } else {
      push_entry(grid, q, li, r, di);
      ++q;
      ++r;
    }
  }
  return grid;
}

std::pair<double, double> grid_increments(const SyncGrid& grid,
                                          const TickSeries& x,
                                          const TickSeries& y,
                                          std::size_t lag, std::size_t j) {
  if (lag < 1 || j < lag || j > grid.n_sync()) {
    raise(Errc::IndexOutOfRange,
          "need 1 <= lag <= j <= n_sync, got lag=" + std::to_string(lag) +
              " j=" + std::to_string(j) +
              " n_sync=" + std::to_string(grid.n_sync()));
  }
  return {x.values[grid.g[j]] - x.values[grid.l[j - lag]],
          y.values[grid.gamma[j]] - y.values[grid.lambda[j - lag]]};
}

}  // namespace hfcov
