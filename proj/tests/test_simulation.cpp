#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hfcov/errors.hpp"
#include "hfcov/estimators.hpp"
#include "hfcov/simulation.hpp"
#include "hfcov/sync.hpp"

using namespace hfcov;

TEST_CASE("arrival draws start at zero, stay sorted and repeat exactly") {
  RngStream a(123);
  RngStream b(123);
  const std::vector<double> ta = poisson_times(0.01, 1.0, a);
  const std::vector<double> tb = poisson_times(0.01, 1.0, b);
  CHECK(ta == tb);
  CHECK(ta.front() == 0.0);
  CHECK(ta.back() <= 1.0);
  for (std::size_t i = 1; i < ta.size(); ++i) CHECK(ta[i] > ta[i - 1]);
}

TEST_CASE("arrival counts track the intensity") {
  RngStream rng(9);
  const double theta = 1.0 / 1000.0;
  const std::vector<double> times = poisson_times(theta, 1.0, rng);
  const double count = static_cast<double>(times.size() - 1);
  CHECK(std::abs(count - 1000.0) < 4.0 * std::sqrt(1000.0));
}

TEST_CASE("implausible intensities are rejected") {
  RngStream rng(1);
  CHECK_THROWS_AS(poisson_times(10.0, 1.0, rng), Error);
  CHECK_THROWS_AS(poisson_times(-1.0, 1.0, rng), Error);
  try {
    poisson_times(10.0, 1.0, rng);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateConfig);
  }
}

TEST_CASE("both legs observe one latent path") {
  SimConfig cfg;
  cfg.theta_x = 1.0 / 800.0;
  cfg.theta_y = 1.0 / 600.0;
  cfg.rho = 0.7;
  cfg.eta_x2 = 0.0;
  cfg.eta_y2 = 0.0;
  RngStream rng(456);
  const SimulatedPair sim = simulate_pair(cfg, rng);

  // noise-free observations replay the latent path at the own tick times
  std::size_t j = 0;
  for (std::size_t i = 0; i < sim.x.times.size(); ++i) {
    while (sim.union_times[j] < sim.x.times[i]) ++j;
    CHECK(sim.x.values[i] == sim.efficient_x[j]);
  }

  // latent increment correlation matches rho up to sampling error
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 1; k < sim.union_times.size(); ++k) {
    const double dt = sim.union_times[k] - sim.union_times[k - 1];
    const double dx = (sim.efficient_x[k] - sim.efficient_x[k - 1]) / std::sqrt(dt);
    const double dy = (sim.efficient_y[k] - sim.efficient_y[k - 1]) / std::sqrt(dt);
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double corr = sxy / std::sqrt(sxx * syy);
  const double se = 1.0 / std::sqrt(static_cast<double>(sim.union_times.size()));
  CHECK(std::abs(corr - cfg.rho) < 4.0 * se);
}

TEST_CASE("perfect correlation collapses the two latent paths") {
  SimConfig cfg;
  cfg.theta_x = 1.0 / 300.0;
  cfg.theta_y = 1.0 / 300.0;
  cfg.rho = 1.0;
  cfg.sigma_x = 1.3;
  cfg.sigma_y = 1.3;
  cfg.eta_x2 = 0.0;
  cfg.eta_y2 = 0.0;
  RngStream rng(7);
  const SimulatedPair sim = simulate_pair(cfg, rng);
  for (std::size_t k = 0; k < sim.union_times.size(); ++k) {
    CHECK(sim.efficient_x[k] == sim.efficient_y[k]);
  }
  CHECK(sim.true_cov == doctest::Approx(1.3 * 1.3));
}

TEST_CASE("zero correlation gives a mean-zero covariance estimate") {
  SimConfig cfg;
  cfg.theta_x = 1.0 / 500.0;
  cfg.theta_y = 1.0 / 500.0;
  cfg.rho = 0.0;
  cfg.eta_x2 = 1e-4;
  cfg.eta_y2 = 1e-4;
  cfg.replications = 200;
  cfg.seed = 77;
  EstimatorSelection sel;
  sel.use_subsample = false;
  sel.use_multiscale = false;
  const McResult result = run_experiment(cfg, sel);
  const EstimatorStats& hy = result.summary.front();
  const double se = std::sqrt(hy.variance / cfg.replications);
  CHECK(std::abs(hy.mean) < 4.0 * se);
}

TEST_CASE("noise-free dense grids recover the true covariance") {
  SimConfig cfg;
  cfg.theta_x = 1.0 / 2000.0;
  cfg.theta_y = 1.0 / 2000.0;
  cfg.rho = 0.5;
  cfg.eta_x2 = 0.0;
  cfg.eta_y2 = 0.0;
  cfg.replications = 500;
  cfg.seed = 99;
  EstimatorSelection sel;
  sel.use_subsample = false;
  sel.use_multiscale = false;
  const McResult result = run_experiment(cfg, sel);
  const EstimatorStats& hy = result.summary.front();
  const double se = std::sqrt(hy.variance / cfg.replications);
  CHECK(std::abs(hy.mean - 0.5) < 4.0 * se);
}

TEST_CASE("expected complex count for independent arrival grids") {
  CHECK(expected_sync_count(1.0 / 30000.0, 1.0 / 30000.0) ==
        doctest::Approx(20000.0));
  const double theta = 0.01;
  CHECK(expected_sync_count(theta, theta) ==
        doctest::Approx(2.0 / (3.0 * theta)));
  CHECK(expected_sync_count(0.001, 1e9) < 1e-6);
  CHECK_THROWS_AS(expected_sync_count(0.0, 1.0), Error);
}

TEST_CASE("single replication collapses the spread") {
  SimConfig cfg;
  cfg.theta_x = 1.0 / 200.0;
  cfg.theta_y = 1.0 / 200.0;
  cfg.replications = 1;
  cfg.seed = 5;
  const McResult result = run_experiment(cfg, EstimatorSelection{});
  for (const EstimatorStats& s : result.summary) {
    CHECK(s.variance == 0.0);
    CHECK(s.rmse == doctest::Approx(std::abs(s.bias)));
  }
}

TEST_CASE("experiments are reproducible and thread-count invariant") {
  SimConfig cfg;
  cfg.theta_x = 1.0 / 400.0;
  cfg.theta_y = 1.0 / 300.0;
  cfg.replications = 24;
  cfg.seed = 31;
  const McResult serial = run_experiment(cfg, EstimatorSelection{}, 1);
  const McResult again = run_experiment(cfg, EstimatorSelection{}, 1);
  const McResult parallel = run_experiment(cfg, EstimatorSelection{}, 4);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].estimate == again.records[i].estimate);
    CHECK(serial.records[i].estimate == parallel.records[i].estimate);
    CHECK(serial.records[i].n_sync == parallel.records[i].n_sync);
    CHECK(serial.records[i].tuning == parallel.records[i].tuning);
  }
  for (std::size_t e = 0; e < serial.summary.size(); ++e) {
    CHECK(serial.summary[e].mean == parallel.summary[e].mean);
    CHECK(serial.summary[e].rmse == parallel.summary[e].rmse);
  }
}

TEST_CASE("spread decomposition ties mean square error together") {
  SimConfig cfg;
  cfg.theta_x = 1.0 / 500.0;
  cfg.theta_y = 1.0 / 500.0;
  cfg.replications = 50;
  cfg.seed = 13;
  const McResult result = run_experiment(cfg, EstimatorSelection{});
  for (const EstimatorStats& s : result.summary) {
    // recompute the mean square error directly from the records
    double mse = 0.0;
    int count = 0;
    for (const RepRecord& rec : result.records) {
      if (rec.kind != s.kind) continue;
      const double err = rec.estimate - result.true_cov;
      mse += err * err;
      ++count;
    }
    mse /= count;
    CHECK(s.rmse * s.rmse == doctest::Approx(mse).epsilon(1e-9));
    CHECK(s.rmse * s.rmse ==
          doctest::Approx(s.bias * s.bias + s.variance).epsilon(1e-12));
  }
}

TEST_CASE("plug-in tuning stays within the valid range") {
  SimConfig cfg;
  cfg.theta_x = 1.0 / 600.0;
  cfg.theta_y = 1.0 / 600.0;
  cfg.eta_x2 = 0.02;
  cfg.eta_y2 = 0.02;
  cfg.replications = 10;
  cfg.seed = 21;
  EstimatorSelection sel;
  sel.policy = TuningPolicy::plugin;
  const McResult result = run_experiment(cfg, sel);
  for (const RepRecord& rec : result.records) {
    if (rec.kind == EstimatorKind::hy) continue;
    CHECK(rec.tuning >= 1);
    CHECK(static_cast<std::size_t>(rec.tuning) <= rec.n_sync);
  }
}

TEST_CASE("manual tuning without a value is a usage error") {
  SimConfig cfg;
  cfg.replications = 1;
  EstimatorSelection sel;
  sel.policy = TuningPolicy::manual;
  sel.manual_k = 5;  // but multiscale still selected without M
  CHECK_THROWS_AS(run_experiment(cfg, sel), Error);
}

TEST_CASE("config validation rejects out-of-range parameters") {
  SimConfig cfg;
  cfg.rho = 1.5;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg.rho = 0.5;
  cfg.eta_x2 = -1.0;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg.eta_x2 = 0.01;
  cfg.replications = 0;
  CHECK_THROWS_AS(validate(cfg), Error);
}
