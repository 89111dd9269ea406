#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "newsflow/errors.hpp"

namespace newsflow {

/// A run of per-tick values (population volume, ingested message counts,
/// rolling statistics). Ticks are implicit and contiguous:
/// origin_tick, origin_tick + 1, ...
struct Series {
  std::vector<double> values;
  std::int64_t origin_tick = 0;
};

namespace detail {

inline bool parse_double(std::string_view s, double& out) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out, std::chars_format::general);
  return ec == std::errc{} && p == end && std::isfinite(out);
}

inline bool parse_int(std::string_view s, std::int64_t& out) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && p == end;
}

// Shortest decimal form that reads back to the identical double.
inline void append_number(std::string& dst, double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  dst.append(buf, static_cast<std::size_t>(p - buf));
}

inline void append_number(std::string& dst, std::int64_t v) {
  char buf[24];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  dst.append(buf, static_cast<std::size_t>(p - buf));
}

}  // namespace detail

inline std::string write_series_csv(const Series& s) {
  std::string out = "tick,value\n";
  std::int64_t tick = s.origin_tick;
  for (double v : s.values) {
    detail::append_number(out, tick++);
    out += ',';
    detail::append_number(out, v);
    out += '\n';
  }
  return out;
}

/// Parses a two-column tick,value CSV. A single header row is skipped when
/// the first cell is not an integer. Ticks must be contiguous integers;
/// values must be finite (NaN/inf tokens are rejected).
inline Series read_series_csv(std::string_view text) {
  Series s;
  bool have_prev = false;
  std::int64_t prev_tick = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    ++line_no;

    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected tick,value", line_no);
    if (line.find(',', comma + 1) != std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected exactly two fields",
                       line_no);
    const std::string_view tick_sv = line.substr(0, comma);
    const std::string_view value_sv = line.substr(comma + 1);

    std::int64_t tick = 0;
    if (!detail::parse_int(tick_sv, tick)) {
      if (line_no == 1 && !have_prev) continue;  // header row
      throw ParseError("line " + std::to_string(line_no) + ": non-numeric tick '" +
                           std::string(tick_sv) + "'",
                       line_no);
    }
    double value = 0.0;
    if (!detail::parse_double(value_sv, value))
      throw ParseError("line " + std::to_string(line_no) + ": non-numeric or non-finite value '" +
                           std::string(value_sv) + "'",
                       line_no);

    if (!have_prev) {
      s.origin_tick = tick;
      have_prev = true;
    } else if (tick != prev_tick + 1) {
      throw ParseError("line " + std::to_string(line_no) + ": gap in ticks (expected " +
                           std::to_string(prev_tick + 1) + ", got " + std::to_string(tick) + ")",
                       line_no);
    }
    prev_tick = tick;
    s.values.push_back(value);
  }
  if (s.values.empty()) throw ParseError("empty series: no data rows");
  return s;
}

}  // namespace newsflow
