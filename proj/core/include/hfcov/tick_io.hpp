#pragma once

#include <iosfwd>
#include <string>

#include "hfcov/tick_series.hpp"

namespace hfcov {

struct CsvOptions {
  char delimiter = ',';
  bool skip_header = false;
  bool dedup = false;  // last-wins on equal consecutive timestamps
};

// Two numeric columns time<delim>logprice per line. Throws ParseError with
// the offending line number, NonMonotoneTimes, or EmptySeries.
TickSeries parse_ticks(std::istream& in, const CsvOptions& options,
                       const std::string& source_name);

TickSeries ingest_ticks(const std::string& path,
                        const CsvOptions& options = {});

// Full-precision emission; a write/parse round trip is bit-exact.
void write_ticks(std::ostream& out, const TickSeries& series,
                 char delimiter = ',');

// Shortest decimal form that round-trips the double exactly (%.17g).
std::string format_full(double value);

}  // namespace hfcov
