#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "hfcov/errors.hpp"
#include "hfcov/rng.hpp"
#include "hfcov/simulation.hpp"
#include "hfcov/sync.hpp"
#include "oracles.hpp"

using namespace hfcov;

namespace {

TickSeries series(std::vector<double> times) {
  TickSeries s;
  s.values = times;  // identity path keeps hand checks easy
  s.times = std::move(times);
  return s;
}

// Observation indices of complex i on the X side: {l[i]+1..g[i]}, plus
// index l[0] itself for the leading complex.
std::set<std::size_t> covered(const std::vector<std::size_t>& last,
                              const std::vector<std::size_t>& before) {
  std::set<std::size_t> out;
  out.insert(before[0]);
  for (std::size_t i = 0; i < last.size(); ++i) {
    for (std::size_t k = before[i] + 1; k <= last[i]; ++k) out.insert(k);
  }
  return out;
}

}  // namespace

TEST_CASE("interleaved example groups ticks into the hand-traced complexes") {
  const TickSeries x = series({0, 1, 5, 7, 8, 10});
  const TickSeries y = series({0, 2, 3, 4, 6, 8, 10});
  const SyncGrid grid = synchronize(x, y);
  CHECK(grid.n_sync() == 5);
  CHECK(grid.g == std::vector<std::size_t>{0, 2, 2, 3, 4, 5});
  CHECK(grid.l == std::vector<std::size_t>{0, 0, 1, 2, 3, 4});
  CHECK(grid.gamma == std::vector<std::size_t>{0, 1, 4, 5, 5, 6});
  CHECK(grid.lambda == std::vector<std::size_t>{0, 0, 1, 3, 4, 5});
}

TEST_CASE("synchronous series degenerate to the identity pairing") {
  const TickSeries x = series({0, 1, 2});
  const SyncGrid grid = synchronize(x, x);
  CHECK(grid.n_sync() == 2);
  CHECK(grid.g == std::vector<std::size_t>{0, 1, 2});
  CHECK(grid.gamma == std::vector<std::size_t>{0, 1, 2});
  CHECK(grid.l == std::vector<std::size_t>{0, 0, 1});
  CHECK(grid.lambda == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("boundary tick equal to the bracketing observation is consumed") {
  const TickSeries x = series({0, 2});
  const TickSeries y = series({0, 1, 2});
  const SyncGrid grid = synchronize(x, y);
  CHECK(grid.n_sync() == 1);
  CHECK(grid.g == std::vector<std::size_t>{0, 1});
  CHECK(grid.gamma == std::vector<std::size_t>{0, 2});
  CHECK(grid.l == std::vector<std::size_t>{0, 0});
  CHECK(grid.lambda == std::vector<std::size_t>{0, 0});
}

TEST_CASE("trailing unmatched ticks land in a zero-increment final complex") {
  // Y keeps observing after X is exhausted.
  const TickSeries x = series({0, 1});
  const TickSeries y = series({0, 0.5, 2, 3});
  const SyncGrid grid = synchronize(x, y);
  const std::size_t last = grid.n_sync();
  CHECK(grid.g[last] == 1);
  CHECK(grid.l[last] == grid.g[last]);  // zero-width X increment
  CHECK(grid.gamma[last] == 3);
  // every Y tick is covered
  const auto y_cov = covered(grid.gamma, grid.lambda);
  for (std::size_t j = 0; j < y.size(); ++j) CHECK(y_cov.count(j) == 1);
}

TEST_CASE("input contract violations are rejected") {
  CHECK_THROWS_AS(synchronize(series({0}), series({0, 1})), Error);
  CHECK_THROWS_AS(synchronize(series({0, 1, 1}), series({0, 1})), Error);
  CHECK_THROWS_AS(synchronize(series({0, 1, 0.5}), series({0, 1})), Error);
  try {
    synchronize(series({0}), series({0, 1}));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptySeries);
  }
  try {
    synchronize(series({0, 1, 1}), series({0, 1}));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonMonotoneTimes);
  }
}

TEST_CASE("synchronize is deterministic") {
  RngStream rng(99);
  const TickSeries x = testing::random_series(rng, 150, true);
  const TickSeries y = testing::random_series(rng, 150, true);
  const SyncGrid a = synchronize(x, y);
  const SyncGrid b = synchronize(x, y);
  CHECK(a.g == b.g);
  CHECK(a.l == b.l);
  CHECK(a.gamma == b.gamma);
  CHECK(a.lambda == b.lambda);
}

TEST_CASE("grid invariants hold on random asynchronous instances") {
  RngStream rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const TickSeries x = testing::random_series(rng, 200, true);
    const TickSeries y = testing::random_series(rng, 200, true);
    const SyncGrid grid = synchronize(x, y);
    const std::size_t n = x.size() - 1;
    const std::size_t m = y.size() - 1;
    const std::size_t entries = grid.n_sync() + 1;

    REQUIRE(grid.g.size() == entries);
    REQUIRE(grid.l.size() == entries);
    REQUIRE(grid.gamma.size() == entries);
    REQUIRE(grid.lambda.size() == entries);
    CHECK(grid.l[0] == 0);
    CHECK(grid.lambda[0] == 0);
    CHECK(grid.g.back() == n);
    CHECK(grid.gamma.back() == m);

    for (std::size_t i = 0; i < entries; ++i) {
      CHECK(grid.l[i] <= grid.g[i]);
      CHECK(grid.lambda[i] <= grid.gamma[i]);
      if (i > 0) {
        CHECK(grid.g[i] >= grid.g[i - 1]);
        CHECK(grid.gamma[i] >= grid.gamma[i - 1]);
      }
    }

    // coverage of every observation index on both sides
    const auto x_cov = covered(grid.g, grid.l);
    const auto y_cov = covered(grid.gamma, grid.lambda);
    for (std::size_t k = 0; k <= n; ++k) CHECK(x_cov.count(k) == 1);
    for (std::size_t k = 0; k <= m; ++k) CHECK(y_cov.count(k) == 1);

    // overlapping consecutive complexes on one side force disjoint ones on
    // the other side
    for (std::size_t i = 0; i + 1 < entries; ++i) {
      const bool x_overlap = grid.g[i] >= grid.l[i + 1] + 1;
      const bool y_overlap = grid.gamma[i] >= grid.lambda[i + 1] + 1;
      CHECK_FALSE((x_overlap && y_overlap));
    }
  }
}

TEST_CASE("telescoped complex increments equal the raw increment sums") {
  RngStream rng(7);
  const TickSeries x = testing::random_series(rng, 120, true);
  const TickSeries y = testing::random_series(rng, 120, true);
  const SyncGrid grid = synchronize(x, y);
  for (std::size_t i = 0; i <= grid.n_sync(); ++i) {
    double raw = 0.0;
    for (std::size_t k = grid.l[i] + 1; k <= grid.g[i]; ++k) {
      raw += x.values[k] - x.values[k - 1];
    }
    const double telescoped = x.values[grid.g[i]] - x.values[grid.l[i]];
    CHECK(telescoped == doctest::Approx(raw).epsilon(1e-12));
  }
}

TEST_CASE("poisson-style inputs never produce a grid finer than the sparser "
          "series") {
  RngStream rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    SimConfig cfg;
    cfg.theta_x = 1.0 / (40.0 + 160.0 * rng.uniform());
    cfg.theta_y = 1.0 / (40.0 + 160.0 * rng.uniform());
    cfg.eta_x2 = 0.0;
    cfg.eta_y2 = 0.0;
    cfg.seed = 1000 + static_cast<std::uint64_t>(trial);
    RngStream sim_rng(cfg.seed);
    const SimulatedPair sim = simulate_pair(cfg, sim_rng);
    const SyncGrid grid = synchronize(sim.x, sim.y);
    CHECK(grid.n_sync() <= std::min(sim.x.size(), sim.y.size()) - 1);
  }
}

TEST_CASE("grid_increments returns the lagged complex moves") {
  TickSeries x = series({0, 1, 2});
  x.values = {0, 1, 3};
  TickSeries y = series({0, 1, 2});
  y.values = {0, 2, 2};
  const SyncGrid grid = synchronize(x, y);

  auto [dx1, dy1] = grid_increments(grid, x, y, 1, 1);
  CHECK(dx1 == 1.0);
  CHECK(dy1 == 2.0);

  auto [dx2, dy2] = grid_increments(grid, x, y, 2, 2);
  CHECK(dx2 == 3.0);
  CHECK(dy2 == 2.0);

  // interleaved example on the identity path
  const TickSeries ix = series({0, 1, 5, 7, 8, 10});
  const TickSeries iy = series({0, 2, 3, 4, 6, 8, 10});
  const SyncGrid igrid = synchronize(ix, iy);
  auto [dxi, dyi] = grid_increments(igrid, ix, iy, 1, 2);
  CHECK(dxi == 5.0);  // t[g_2] - t[l_1] = 5 - 0
  CHECK(dyi == 4.0);  // tau[gamma_2] - tau[lambda_1] = 6 - 2

  CHECK_THROWS_AS(grid_increments(grid, x, y, 1, 0), Error);
  CHECK_THROWS_AS(grid_increments(grid, x, y, 3, 2), Error);
  CHECK_THROWS_AS(grid_increments(grid, x, y, 1, 3), Error);
  try {
    grid_increments(grid, x, y, 1, 3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
}
