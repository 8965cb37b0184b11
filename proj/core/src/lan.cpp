#include "hfcov/lan.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hfcov/accum.hpp"
#include "hfcov/errors.hpp"

namespace hfcov {

namespace {

void check_rho_eta(double rho, double eta_x, double eta_y) {
  if (!(std::abs(rho) < 1.0)) {
    raise(Errc::ParameterOutOfRange,
          "|rho| must be < 1, got " + std::to_string(rho));
  }
  if (!(eta_x > 0.0) || !(eta_y > 0.0)) {
    raise(Errc::ParameterOutOfRange, "noise standard deviations must be > 0");
  }
}

// 1 - cos(i pi / (N+1)) of the shared tridiagonal eigenbasis.
double cosine_gap(std::size_t i, std::size_t n) {
  return 1.0 - std::cos(static_cast<double>(i) * std::numbers::pi /
                        static_cast<double>(n + 1));
}

}  // namespace

LanProfile make_lan_profile(double rho, double eta_x, double eta_y,
                            std::size_t n_obs, double h) {
  check_rho_eta(rho, eta_x, eta_y);
  if (n_obs < 1) {
    raise(Errc::ParameterOutOfRange, "n_obs must be >= 1");
  }
  LanProfile profile;
  profile.rho = rho;
  profile.eta_x = std::max(eta_x, eta_y);
  profile.eta_y = std::min(eta_x, eta_y);
  profile.n_obs = n_obs;
  profile.h = h;
  const double shifted = perturbed_rho(profile);
  if (std::abs(shifted) > 1.0) {
    raise(Errc::ParameterOutOfRange,
          "perturbed correlation " + std::to_string(shifted) +
              " leaves [-1, 1]");
  }
  return profile;
}

double perturbed_rho(const LanProfile& profile) {
  return profile.rho +
         profile.h * std::pow(static_cast<double>(profile.n_obs), -0.25);
}

EigenvaluePair eigenvalues_equal_noise(const LanProfile& profile) {
  if (!profile.equal_noise()) {
    raise(Errc::UnequalNoise,
          "equal-noise closed form needs eta_x == eta_y; "
          "use eigenvalues_general");
  }
  const std::size_t n = profile.n_obs;
  const double dt = profile.dt();
  const double eta2 = profile.eta_x * profile.eta_x;
  EigenvaluePair out;
  out.plus.resize(n);
  out.minus.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double noise = 2.0 * eta2 * cosine_gap(i, n);
    out.plus[i - 1] = dt * (1.0 + profile.rho) + noise;
    out.minus[i - 1] = dt * (1.0 - profile.rho) + noise;
  }
  return out;
}

EigenvaluePair eigenvalues_general(const LanProfile& profile, double theta) {
  const std::size_t n = profile.n_obs;
  const double dt = profile.dt();
  const double ex2 = profile.eta_x * profile.eta_x;
  const double ey2 = profile.eta_y * profile.eta_y;
  EigenvaluePair out;
  out.plus.resize(n);
  out.minus.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double gap = cosine_gap(i, n);
    const double lx = dt + 2.0 * ex2 * gap;
    const double ly = dt + 2.0 * ey2 * gap;
    const double avg = 0.5 * (lx + ly);
    const double half_diff = 0.5 * (lx - ly);
    const double root =
        std::sqrt(half_diff * half_diff + theta * theta * dt * dt);
    out.plus[i - 1] = avg + root;
    out.minus[i - 1] = avg - root;
  }
  return out;
}

double gamma_sq_sum(const LanProfile& profile) {
  if (!profile.equal_noise()) {
    raise(Errc::UnequalNoise,
          "exact gamma coefficients need equal noise; "
          "use gamma_sq_sum_bounds");
  }
  const double shifted = perturbed_rho(profile);
  const std::size_t n = profile.n_obs;
  const double dt = profile.dt();
  const double eta2 = profile.eta_x * profile.eta_x;
  CompensatedSum acc;
  for (std::size_t i = 1; i <= n; ++i) {
    const double noise = 2.0 * eta2 * cosine_gap(i, n);
    const double lp = dt * (1.0 + profile.rho) + noise;
    const double lm = dt * (1.0 - profile.rho) + noise;
    const double gp = (dt * (1.0 + shifted) + noise - lp) / lp;
    const double gm = (dt * (1.0 - shifted) + noise - lm) / lm;
    acc.add(gp * gp + gm * gm);
  }
  return acc.value();
}

Bracket gamma_sq_sum_bounds(const LanProfile& profile) {
  const double shifted = perturbed_rho(profile);
  const std::size_t n = profile.n_obs;
  const double dt = profile.dt();
  const double ex2 = profile.eta_x * profile.eta_x;
  const double ey2 = profile.eta_y * profile.eta_y;
  const double step = (shifted - profile.rho) * dt;  // h N^{-1/4} dt
  CompensatedSum lower;
  CompensatedSum upper;
  for (std::size_t i = 1; i <= n; ++i) {
    const double gap = cosine_gap(i, n);
    const double lx = dt + 2.0 * ex2 * gap;
    const double avg = dt + (ex2 + ey2) * gap;
    const double rdt = profile.rho * dt;
    const double lo_p = step / (lx + rdt);
    const double lo_m = step / (lx - rdt);
    const double up_p = step / (avg + rdt);
    const double up_m = step / (avg - rdt);
    lower.add(lo_p * lo_p + lo_m * lo_m);
    upper.add(up_p * up_p + up_m * up_m);
  }
  return {lower.value(), upper.value()};
}

double fisher_info_equal(double rho, double eta) {
  check_rho_eta(rho, eta, eta);
  const double s =
      std::pow(1.0 + rho, -1.5) + std::pow(1.0 - rho, -1.5);
  return s / (8.0 * eta);
}

Bracket fisher_info_bounds(double rho, double eta_x, double eta_y) {
  check_rho_eta(rho, eta_x, eta_y);
  const double hi = std::max(eta_x, eta_y);
  const double s =
      std::pow(1.0 + rho, -1.5) + std::pow(1.0 - rho, -1.5);
  Bracket out;
  out.lower = s / (8.0 * hi);
  out.upper = std::numbers::sqrt2 / 8.0 * s /
              std::sqrt(eta_x * eta_x + eta_y * eta_y);
  return out;
}

}  // namespace hfcov
