#pragma once

#include <stdexcept>
#include <string>

namespace hfcov {

// Error codes surfaced by the CLI as "error: <Name>: <message>".
enum class Errc {
  EmptySeries,
  NonMonotoneTimes,
  IndexOutOfRange,
  GridMismatch,
  TuningOutOfRange,
  NegativeVariance,
  DegenerateConfig,
  ParameterOutOfRange,
  ParseError,
  UnequalNoise,
  UsageError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hfcov
