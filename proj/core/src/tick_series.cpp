#include "hfcov/tick_series.hpp"

#include <cmath>
#include <string>

#include "hfcov/errors.hpp"

namespace hfcov {

void validate(const TickSeries& series, std::optional<double> horizon) {
  if (series.times.size() != series.values.size()) {
    raise(Errc::EmptySeries,
          "times and values differ in length (" +
              std::to_string(series.times.size()) + " vs " +
              std::to_string(series.values.size()) + ")");
  }
  if (series.times.size() < 2) {
    raise(Errc::EmptySeries, "a tick series needs at least 2 observations, got " +
                                 std::to_string(series.times.size()));
  }
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    if (!std::isfinite(series.times[i])) {
      raise(Errc::NonMonotoneTimes,
            "non-finite timestamp at index " + std::to_string(i));
    }
    if (i > 0 && !(series.times[i] > series.times[i - 1])) {
      raise(Errc::NonMonotoneTimes,
            "timestamps must be strictly increasing, violated at index " +
                std::to_string(i));
    }
  }
  if (horizon) {
    if (series.times.front() < 0.0 || series.times.back() > *horizon) {
      raise(Errc::ParameterOutOfRange,
            "timestamps leave [0, " + std::to_string(*horizon) + "]");
    }
  }
}

}  // namespace hfcov
