#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace newsflow {

// Invalid configuration: parameter ranges, schedules, scale grids, JSON shape.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data (CSV); carries the 1-based line number when known.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line(line) {}
  std::size_t line = 0;
};

// Structurally valid input outside an operation's domain
// (constant series, series too short).
struct AnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem failures; the CLI maps these to their own exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace newsflow
