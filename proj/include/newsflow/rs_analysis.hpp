#pragma once

// Rescaled-range (R/S) analysis:
//   mean_N   = (1/N) sum_t xi(t)
//   X(t)     = sum_{u<=t} (xi(u) - mean_N)         accumulated deviation
//   R        = max_t X(t) - min_t X(t)             range
//   S        = sqrt((1/N) sum_t (xi(t) - mean_N)^2)  population form
//   R/S      = (N/2)^H  =>  H = ln(R/S) / ln(N/2)
// and the cellular fractal dimension rho = 2 - H.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "newsflow/errors.hpp"
#include "newsflow/timeseries.hpp"

namespace newsflow {

struct HurstReport {
  std::size_t n = 0;
  double mean = 0.0;
  double range = 0.0;
  double stddev = 0.0;
  double rs = 0.0;
  double hurst = 0.0;
  double fractal_dim = 0.0;
};

inline double fractal_dimension(double hurst) { return 2.0 - hurst; }

/// The closed form is not clamped; estimates outside [0,1] are reported as
/// computed. Callers may warn on them.
inline bool hurst_out_of_range(const HurstReport& r) {
  return r.hurst < 0.0 || r.hurst > 1.0;
}

/// Running sum of mean-centered values; the last element is 0 up to rounding.
inline std::vector<double> cumulative_deviation(std::span<const double> xi) {
  const std::size_t n = xi.size();
  std::vector<double> x(n);
  double sum = 0.0;
  for (double v : xi) sum += v;
  const double mean = sum / static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    acc += xi[t] - mean;
    x[t] = acc;
  }
  return x;
}

struct RsStat {
  double range = 0.0;
  double stddev = 0.0;
};

inline RsStat rs_statistic(std::span<const double> xi) {
  const std::size_t n = xi.size();
  if (n < 2) throw AnalysisError("series too short for R/S statistic: need N >= 2");
  double sum = 0.0;
  for (double v : xi) sum += v;
  const double mean = sum / static_cast<double>(n);
  double acc = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sq = 0.0;
  for (double v : xi) {
    const double d = v - mean;
    acc += d;
    sq += d * d;
    if (acc < lo) lo = acc;
    if (acc > hi) hi = acc;
  }
  return RsStat{hi - lo, std::sqrt(sq / static_cast<double>(n))};
}

inline HurstReport hurst_point(std::span<const double> xi) {
  const std::size_t n = xi.size();
  if (n < 3)
    throw AnalysisError("series too short for Hurst estimate: need N >= 3, got N=" +
                        std::to_string(n));
  double sum = 0.0;
  for (double v : xi) sum += v;
  const double mean = sum / static_cast<double>(n);
  double acc = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sq = 0.0;
  for (double v : xi) {
    const double d = v - mean;
    acc += d;
    sq += d * d;
    if (acc < lo) lo = acc;
    if (acc > hi) hi = acc;
  }
  HurstReport r;
  r.n = n;
  r.mean = mean;
  r.range = hi - lo;
  r.stddev = std::sqrt(sq / static_cast<double>(n));
  if (r.stddev == 0.0) throw AnalysisError("constant series: R/S is undefined");
  r.rs = r.range / r.stddev;
  r.hurst = std::log(r.rs) / std::log(static_cast<double>(n) / 2.0);
  r.fractal_dim = fractal_dimension(r.hurst);
  return r;
}

enum class HurstMode { prefix, window };

/// Rolling Hurst estimates, one per tick: over the growing prefix ending at
/// the tick, or over the trailing window of length `window`. Undefined
/// estimates (constant data) are dropped; the output starts at the first
/// valid tick. An interior gap cannot be represented in a contiguous series
/// and raises an error.
inline Series hurst_dynamics(const Series& s, HurstMode mode, std::size_t min_n = 20,
                             std::size_t window = 0) {
  if (min_n < 3) throw ConfigError("min_n must be >= 3");
  const std::vector<double>& v = s.values;
  const std::size_t n = v.size();
  if (mode == HurstMode::window) {
    if (window < min_n) throw ConfigError("window must be >= min_n");
    if (n < window)
      throw AnalysisError("series too short: need at least window=" + std::to_string(window) +
                          " values, got " + std::to_string(n));
  } else if (n < min_n) {
    throw AnalysisError("series too short: need at least min_n=" + std::to_string(min_n) +
                        " values, got " + std::to_string(n));
  }

  Series out;
  bool have_first = false;
  std::int64_t expected = 0;
  const auto emit = [&](std::int64_t tick, std::span<const double> win) {
    double h = 0.0;
    try {
      h = hurst_point(win).hurst;
    } catch (const AnalysisError&) {
      return;  // constant window: no estimate at this tick
    }
    if (!have_first) {
      out.origin_tick = tick;
      have_first = true;
    } else if (tick != expected) {
      throw AnalysisError("rolling estimate has an interior gap before tick " +
                          std::to_string(tick) +
                          " (constant window); cannot form a contiguous series");
    }
    out.values.push_back(h);
    expected = tick + 1;
  };

  if (mode == HurstMode::prefix) {
    for (std::size_t len = min_n; len <= n; ++len)
      emit(s.origin_tick + static_cast<std::int64_t>(len) - 1,
           std::span<const double>(v.data(), len));
  } else {
    for (std::size_t i = 0; i + window <= n; ++i)
      emit(s.origin_tick + static_cast<std::int64_t>(i + window) - 1,
           std::span<const double>(v.data() + i, window));
  }
  if (out.values.empty())
    throw AnalysisError("no valid estimates: every window of the series is constant");
  return out;
}

}  // namespace newsflow
