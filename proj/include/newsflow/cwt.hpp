#pragma once

// Continuous wavelet transform with the derivative-of-Gaussian family:
//   W(a, b) = a^{-1/2} sum_t f(t) psi((t - b) / a)
// on unit-spaced ticks with zero padding outside the data. Shifts b run over
// the sample indices 0..N-1; coefficients beyond |t - b| > 8a sit outside the
// cone of influence and are negligible.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "newsflow/errors.hpp"
#include "newsflow/timeseries.hpp"

namespace newsflow {

/// Mother wavelet psi_n = c_n d^n/dt^n exp(-t^2/2), order n in 1..4, with
/// c_n = sqrt(2^n / ((2n-1)!! sqrt(pi))) giving unit L2 norm. Every order
/// integrates to zero over the line (admissibility).
struct WaveletSpec {
  int order = 1;
};

inline void validate(const WaveletSpec& spec) {
  if (spec.order < 1 || spec.order > 4)
    throw ConfigError("wavelet order must be in 1..4, got " + std::to_string(spec.order));
}

inline double wavelet_eval(const WaveletSpec& spec, double t) {
  static const double rpi = std::sqrt(std::numbers::pi);
  const double g = std::exp(-0.5 * t * t);
  switch (spec.order) {
    case 1: {
      static const double c = std::sqrt(2.0 / rpi);
      return c * -t * g;
    }
    case 2: {
      static const double c = std::sqrt(4.0 / (3.0 * rpi));
      return c * (t * t - 1.0) * g;
    }
    case 3: {
      static const double c = std::sqrt(8.0 / (15.0 * rpi));
      return c * -(t * t * t - 3.0 * t) * g;
    }
    case 4: {
      static const double c = std::sqrt(16.0 / (105.0 * rpi));
      return c * (t * t * t * t - 6.0 * t * t + 3.0) * g;
    }
    default:
      throw ConfigError("wavelet order must be in 1..4, got " + std::to_string(spec.order));
  }
}

struct ScaleGrid {
  std::vector<double> scales;  // strictly increasing, all > 0

  static ScaleGrid log_spaced(double a_min, double a_max, std::size_t count) {
    if (!(a_min > 0.0)) throw ConfigError("scale min must be > 0");
    if (!(a_min < a_max)) throw ConfigError("scale min must be < scale max");
    if (count < 2) throw ConfigError("scale count must be >= 2");
    ScaleGrid g;
    g.scales.reserve(count);
    const double span = std::log(a_max / a_min);
    for (std::size_t i = 0; i < count; ++i)
      g.scales.push_back(a_min *
                         std::exp(span * static_cast<double>(i) / static_cast<double>(count - 1)));
    return g;
  }

  /// Default analysis grid: 64 log-spaced scales from 1 to max(N/4, 2).
  static ScaleGrid default_grid(std::size_t n_samples) {
    return log_spaced(1.0, std::max(2.0, static_cast<double>(n_samples) / 4.0), 64);
  }
};

inline void validate(const ScaleGrid& g) {
  if (g.scales.empty()) throw ConfigError("scale grid must be non-empty");
  double prev = 0.0;
  for (double a : g.scales) {
    if (!std::isfinite(a) || !(a > 0.0))
      throw ConfigError("scales must be positive finite numbers");
    if (!(a > prev)) throw ConfigError("scales must be strictly increasing");
    prev = a;
  }
}

/// Dense row-major matrix; for scaleograms rows are scales, columns shifts.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct Scaleogram {
  ScaleGrid grid;
  Matrix coefficients;  // [n_scales x n_shifts], shifts b = 0..N-1
};

/// Removes the series mean (the DC pedestal that would otherwise leak
/// through the zero-padded boundary).
inline Series mean_centered(const Series& s) {
  Series out = s;
  double sum = 0.0;
  for (double v : out.values) sum += v;
  const double mean = sum / static_cast<double>(out.values.size());
  for (double& v : out.values) v -= mean;
  return out;
}

/// Direct evaluation of the discretized transform. The wavelet is sampled
/// once per scale at the integer offsets d = t - b; offsets past 12a are
/// dropped, where the Gaussian tail is ~1e-31 and far below the rounding
/// noise of the sum.
inline Scaleogram cwt(const Series& series, const WaveletSpec& spec, const ScaleGrid& grid) {
  validate(spec);
  validate(grid);
  const std::vector<double>& f = series.values;
  const std::int64_t n = static_cast<std::int64_t>(f.size());
  if (n < 2) throw ConfigError("cwt needs a series of length >= 2");

  Scaleogram sg{grid, Matrix(grid.scales.size(), f.size())};
  std::vector<double> kernel;
  for (std::size_t i = 0; i < grid.scales.size(); ++i) {
    const double a = grid.scales[i];
    const double inv_sqrt_a = 1.0 / std::sqrt(a);
    const std::int64_t radius = static_cast<std::int64_t>(std::ceil(12.0 * a));
    kernel.assign(static_cast<std::size_t>(2 * radius + 1), 0.0);
    for (std::int64_t d = -radius; d <= radius; ++d)
      kernel[static_cast<std::size_t>(d + radius)] =
          wavelet_eval(spec, static_cast<double>(d) / a);

    for (std::int64_t b = 0; b < n; ++b) {
      const std::int64_t t0 = std::max<std::int64_t>(0, b - radius);
      const std::int64_t t1 = std::min<std::int64_t>(n - 1, b + radius);
      const double* k = kernel.data() + (radius - b);
      double sum = 0.0;
      for (std::int64_t t = t0; t <= t1; ++t) sum += f[static_cast<std::size_t>(t)] * k[t];
      sg.coefficients(i, static_cast<std::size_t>(b)) = inv_sqrt_a * sum;
    }
  }
  return sg;
}

inline Matrix magnitude(const Scaleogram& sg) {
  Matrix m = sg.coefficients;
  for (double& v : m.data) v = std::abs(v);
  return m;
}

/// CSV layout: header "scale,b0,b1,...", then one row per scale with the
/// coefficient values at full round-trip precision.
inline std::string write_scaleogram_csv(const Scaleogram& sg) {
  std::string out = "scale";
  for (std::size_t b = 0; b < sg.coefficients.cols; ++b) {
    out += ",b";
    detail::append_number(out, static_cast<std::int64_t>(b));
  }
  out += '\n';
  for (std::size_t i = 0; i < sg.coefficients.rows; ++i) {
    detail::append_number(out, sg.grid.scales[i]);
    for (std::size_t b = 0; b < sg.coefficients.cols; ++b) {
      out += ',';
      detail::append_number(out, sg.coefficients(i, b));
    }
    out += '\n';
  }
  return out;
}

inline Scaleogram read_scaleogram_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    lines.push_back(
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos));
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
  }
  if (lines.empty()) throw ParseError("empty scaleogram: no header row");

  const auto split = [](std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    return cells;
  };

  const std::vector<std::string_view> header = split(lines[0]);
  if (header.size() < 2 || header[0] != "scale")
    throw ParseError("line 1: expected header \"scale,b0,b1,...\"", 1);
  const std::size_t n_shifts = header.size() - 1;

  Scaleogram sg;
  std::vector<double> rows;
  double prev_scale = 0.0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    const std::vector<std::string_view> cells = split(lines[li]);
    if (cells.size() != n_shifts + 1)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(n_shifts + 1) + " fields, got " +
                           std::to_string(cells.size()),
                       line_no);
    double a = 0.0;
    if (!detail::parse_double(cells[0], a) || !(a > 0.0))
      throw ParseError("line " + std::to_string(line_no) + ": bad scale '" +
                           std::string(cells[0]) + "'",
                       line_no);
    if (!(a > prev_scale))
      throw ParseError("line " + std::to_string(line_no) + ": scales must be strictly increasing",
                       line_no);
    prev_scale = a;
    sg.grid.scales.push_back(a);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v = 0.0;
      if (!detail::parse_double(cells[c], v))
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric coefficient '" +
                             std::string(cells[c]) + "'",
                         line_no);
      rows.push_back(v);
    }
  }
  if (sg.grid.scales.empty()) throw ParseError("empty scaleogram: no scale rows");
  sg.coefficients.rows = sg.grid.scales.size();
  sg.coefficients.cols = n_shifts;
  sg.coefficients.data = std::move(rows);
  return sg;
}

}  // namespace newsflow
