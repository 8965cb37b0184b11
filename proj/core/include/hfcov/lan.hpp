#pragma once

#include <cstddef>
#include <vector>

namespace hfcov {

// Parametric synchronous model: N equidistant observations of two unit
// Brownian motions with constant correlation rho on [0, 1], Gaussian noise
// with standard deviations eta_x >= eta_y (normalized on construction).
// h is the local perturbation; the shifted correlation rho + h N^{-1/4}
// must stay inside [-1, 1].
struct LanProfile {
  double rho = 0.0;
  double eta_x = 0.1;
  double eta_y = 0.1;
  std::size_t n_obs = 1;
  double h = 0.0;

  double dt() const { return 1.0 / static_cast<double>(n_obs); }
  bool equal_noise() const { return eta_x == eta_y; }
};

// Validates and swap-normalizes eta_x >= eta_y.
LanProfile make_lan_profile(double rho, double eta_x, double eta_y,
                            std::size_t n_obs, double h);

double perturbed_rho(const LanProfile& profile);

struct EigenvaluePair {
  std::vector<double> plus;
  std::vector<double> minus;
};

// Equal-noise closed form, i = 1..N:
//   dt (1 +- rho) + 2 eta^2 (1 - cos(i pi / (N+1))).
// Throws UnequalNoise when eta_x != eta_y.
EigenvaluePair eigenvalues_equal_noise(const LanProfile& profile);

// General closed form via the shared tridiagonal eigenbasis:
//   xi_± = (lx + ly)/2 ± sqrt(((lx - ly)/2)^2 + theta^2 dt^2)
// with lx = dt + 2 eta_x^2 (1 - cos(i pi/(N+1))), ly likewise. The labels
// are ordered by magnitude; for equal noise and theta < 0 they swap
// relative to the (1 +- theta) pairing, the spectra agree as sets.
EigenvaluePair eigenvalues_general(const LanProfile& profile, double theta);

// Sum of squared log-likelihood eigenvalue perturbations over all 2N modes,
// evaluated with the exact eigenvalues at rho and at the shifted rho.
// Equal-noise profiles only; converges to 2 h^2 I(rho).
double gamma_sq_sum(const LanProfile& profile);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
};

// Bracketing sums for unequal noise (collapse to gamma_sq_sum when equal):
//   lower: sum over i of (N^{-1/4} h dt)^2 [1/(lx + rho dt)^2 + 1/(lx - rho dt)^2]
//   upper: same with (lx + ly)/2 in place of lx.
Bracket gamma_sq_sum_bounds(const LanProfile& profile);

// Exact asymptotic Fisher information for equal noise:
//   (1/(8 eta)) ((1+rho)^{-3/2} + (1-rho)^{-3/2}).
double fisher_info_equal(double rho, double eta);

// Lower/upper information bounds for unequal noise; equal at eta_x = eta_y.
Bracket fisher_info_bounds(double rho, double eta_x, double eta_y);

}  // namespace hfcov
