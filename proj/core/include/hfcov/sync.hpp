#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hfcov/tick_series.hpp"

namespace hfcov {

// Joint grid over two asynchronous tick series. Entry i pairs the i-th
// X-complex with the i-th Y-complex:
//   g[i]      index of the last X observation in complex i
//   l[i]      index of the X observation just before the complex, so the
//             complex's price move telescopes to values[g[i]] - values[l[i]]
//   gamma[i], lambda[i]   the same on the Y side
// Convention: l[0] = lambda[0] = 0. A complex with l[i] == g[i] carries a
// zero increment (this happens for the leading set on the late-starting side
// and for the trailing leftover set when one series ends early).
//
// Immutable after construction; safe to share across threads.
struct SyncGrid {
  std::vector<std::size_t> g;
  std::vector<std::size_t> l;
  std::vector<std::size_t> gamma;
  std::vector<std::size_t> lambda;

  std::size_t n_sync() const { return g.size() - 1; }
};

// Builds the joint grid with the iterative pairing procedure: at each step
// the earlier of the two pending observations is grouped with every tick of
// the other series up to and including the one that brackets it. Pure
// function; throws EmptySeries / NonMonotoneTimes on invalid input.
SyncGrid synchronize(const TickSeries& x, const TickSeries& y);

// Lagged complex increments:
//   (x.values[g[j]] - x.values[l[j-lag]],
//    y.values[gamma[j]] - y.values[lambda[j-lag]])
// Requires 1 <= lag <= j <= n_sync; throws IndexOutOfRange otherwise.
std::pair<double, double> grid_increments(const SyncGrid& grid,
                                          const TickSeries& x,
                                          const TickSeries& y,
                                          std::size_t lag, std::size_t j);

}  // namespace hfcov
