#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hfcov {

// Deterministic random stream. mt19937_64 output is pinned by the standard;
// the uniform/normal/exponential transforms are spelled out here instead of
// using std distributions, whose algorithms are implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(mix(seed)) {}

  // Stream for one replication, decorrelated from the master seed so that
  // parallel and serial experiment runs draw identical numbers.
  static RngStream for_replication(std::uint64_t master_seed,
                                   std::uint64_t replication) {
    return RngStream(mix(master_seed) ^
                     mix(replication * 0x9E3779B97F4A7C15ull +
                         0xD1B54A32D192ED03ull));
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; pairs are used in draw order.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double exponential(double mean) {
    return -mean * std::log1p(-uniform());
  }

  std::uint64_t raw() { return gen_(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hfcov
