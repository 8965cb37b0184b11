#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace hfcov {

// One asset's observation times and noisy log-price values.
struct TickSeries {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
};

// Checks the series contract: at least two observations, matching lengths,
// strictly increasing finite timestamps, and (when given) all times inside
// [0, horizon]. Throws EmptySeries / NonMonotoneTimes / ParameterOutOfRange.
void validate(const TickSeries& series,
              std::optional<double> horizon = std::nullopt);

}  // namespace hfcov
