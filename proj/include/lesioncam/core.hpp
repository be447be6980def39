#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>

namespace lesioncam {

using Index = Eigen::Index;

/// Dense H x W activation map, row-major so that CAMT payloads map onto it
/// without a copy.
template <typename Scalar>
using Heatmap = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// H x W foreground mask (true = lesion).
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit grayscale raster.
using Gray8 = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Axis-aligned box on half-open pixel intervals [x_min, x_max) x [y_min, y_max).
struct Box {
  std::int64_t x_min = 0;
  std::int64_t y_min = 0;
  std::int64_t x_max = 0;
  std::int64_t y_max = 0;

  std::int64_t width() const { return x_max - x_min; }
  std::int64_t height() const { return y_max - y_min; }
  std::int64_t area() const { return width() * height(); }
  bool valid() const { return x_min >= 0 && y_min >= 0 && x_min < x_max && y_min < y_max; }

  friend bool operator==(const Box&, const Box&) = default;
};

inline std::int64_t intersection_area(const Box& a, const Box& b) {
  const auto w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const auto h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  return (w > 0 && h > 0) ? w * h : 0;
}

}  // namespace lesioncam
