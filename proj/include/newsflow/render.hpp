#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "newsflow/cwt.hpp"
#include "newsflow/errors.hpp"

namespace newsflow {

enum class ValueMap { linear, log };

/// Row-major 8-bit grayscale raster; row 0 is the top scanline.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;
};

/// Maps magnitudes onto [0, 255]: linear normalizes v over [min, max], log
/// normalizes log(1 + v) the same way. Rounding is half-up. A constant
/// matrix renders all-black. Image row 0 is matrix row 0 (smallest scale).
inline GrayImage scaleogram_to_image(const Matrix& magnitudes, ValueMap map) {
  if (magnitudes.rows == 0 || magnitudes.cols == 0)
    throw ConfigError("cannot render an empty matrix");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : magnitudes.data) {
    if (!std::isfinite(v) || v < 0.0)
      throw ConfigError("magnitudes must be finite and non-negative");
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }

  GrayImage img{magnitudes.cols, magnitudes.rows,
                std::vector<std::uint8_t>(magnitudes.rows * magnitudes.cols, 0)};
  if (hi == lo) return img;

  const auto xf = [map](double v) { return map == ValueMap::linear ? v : std::log1p(v); };
  const double base = xf(lo);
  const double span = xf(hi) - base;
  for (std::size_t i = 0; i < magnitudes.data.size(); ++i) {
    const double u = (xf(magnitudes.data[i]) - base) / span;
    img.pixels[i] = static_cast<std::uint8_t>(std::floor(255.0 * u + 0.5));
  }
  return img;
}

/// Binary PGM (P5): "P5\n<width> <height>\n255\n" followed by the raw bytes.
inline std::string write_pgm(const GrayImage& img) {
  std::string out = "P5\n";
  out += std::to_string(img.width);
  out += ' ';
  out += std::to_string(img.height);
  out += "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

}  // namespace newsflow
