#include "hfcov/errors.hpp"

namespace hfcov {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::EmptySeries:
      return "EmptySeries";
    case Errc::NonMonotoneTimes:
      return "NonMonotoneTimes";
    case Errc::IndexOutOfRange:
      return "IndexOutOfRange";
    case Errc::GridMismatch:
      return "GridMismatch";
    case Errc::TuningOutOfRange:
      return "TuningOutOfRange";
    case Errc::NegativeVariance:
      return "NegativeVariance";
    case Errc::DegenerateConfig:
      return "DegenerateConfig";
    case Errc::ParameterOutOfRange:
      return "ParameterOutOfRange";
    case Errc::ParseError:
      return "ParseError";
    case Errc::UnequalNoise:
      return "UnequalNoise";
    case Errc::UsageError:
      return "UsageError";
  }
  return "Unknown";
}

}  // namespace hfcov
