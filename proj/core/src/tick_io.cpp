#include "hfcov/tick_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "hfcov/errors.hpp"

namespace hfcov {

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line,
                             const std::string& what) {
  raise(Errc::ParseError,
        source + ": line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& field, const std::string& source,
                    std::size_t line) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end)))
    ++end;
  if (end == begin || !end || *end != '\0') {
    parse_fail(source, line, "not a number: '" + field + "'");
  }
  return value;
}

}  // namespace

TickSeries parse_ticks(std::istream& in, const CsvOptions& options,
                       const std::string& source_name) {
  TickSeries series;
  std::string line;
  std::size_t line_no = 0;
  bool pending_header = options.skip_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (pending_header) {
      pending_header = false;
      continue;
    }
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      parse_fail(source_name, line_no, "empty line");
    }
    const std::size_t cut = line.find(options.delimiter);
    if (cut == std::string::npos) {
      parse_fail(source_name, line_no, "expected two delimited columns");
    }
    if (line.find(options.delimiter, cut + 1) != std::string::npos) {
      parse_fail(source_name, line_no, "more than two columns");
    }
    const double time =
        parse_number(line.substr(0, cut), source_name, line_no);
    const double value =
        parse_number(line.substr(cut + 1), source_name, line_no);
    if (!std::isfinite(time)) {
      parse_fail(source_name, line_no, "non-finite timestamp");
    }
    if (!series.times.empty()) {
      if (time == series.times.back() && options.dedup) {
        series.values.back() = value;  // last wins
        continue;
      }
      if (time <= series.times.back()) {
        raise(Errc::NonMonotoneTimes,
              source_name + ": line " + std::to_string(line_no) +
                  ": timestamp " + format_full(time) +
                  " does not increase past " +
                  format_full(series.times.back()));
      }
    }
    series.times.push_back(time);
    series.values.push_back(value);
  }
  if (series.times.size() < 2) {
    raise(Errc::EmptySeries,
          source_name + ": fewer than 2 usable observations");
  }
  return series;
}

TickSeries ingest_ticks(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) {
    raise(Errc::ParseError, "cannot open '" + path + "'");
  }
  return parse_ticks(in, options, path);
}

void write_ticks(std::ostream& out, const TickSeries& series,
                 char delimiter) {
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << format_full(series.times[i]) << delimiter
        << format_full(series.values[i]) << '\n';
  }
}

std::string format_full(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace hfcov
