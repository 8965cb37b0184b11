#pragma once

#include <cmath>

namespace hfcov {

// Neumaier-compensated running sum. Long estimator sums mix terms of very
// different magnitude; plain accumulation loses the low-order bits the
// cross-checks compare at 1e-10.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace hfcov
