#pragma once

// Activation map -> lesion mask: Otsu level combined with a fixed floor,
// then iterated morphological opening.

#include "lesioncam/core.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace lesioncam {

struct ThresholdConfig {
  double t_floor = 0.2;      ///< minimum normalized activation for foreground
  int open_kernel = 3;       ///< odd side length of the square structuring element
  int open_iterations = 3;   ///< erosions, then the same number of dilations

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

using LevelHistogram = std::array<std::uint64_t, 256>;

/// round(v * 255), clamped to 0..255.
template <typename Scalar>
std::uint8_t quantize_level(Scalar v) {
  const long q = std::lround(static_cast<double>(v) * 255.0);
  return static_cast<std::uint8_t>(q < 0 ? 0 : (q > 255 ? 255 : q));
}

template <typename Derived>
LevelHistogram level_histogram(const Eigen::DenseBase<Derived>& map) {
  LevelHistogram hist{};
  for (Index y = 0; y < map.rows(); ++y)
    for (Index x = 0; x < map.cols(); ++x) ++hist[quantize_level(map(y, x))];
  return hist;
}

/// Otsu's level: the T maximizing between-class variance for classes
/// {q <= T} and {q > T}. Compared in exact integer arithmetic; ties go to the
/// lowest T. A histogram with one occupied bin returns that bin's level.
int otsu_threshold(const LevelHistogram& hist);

template <typename Derived>
int otsu_threshold(const Eigen::DenseBase<Derived>& map) {
  return otsu_threshold(level_histogram(map));
}

/// Foreground iff quantized level > Otsu level and v >= t_floor.
template <typename Derived>
Mask binarize(const Eigen::DenseBase<Derived>& map, const ThresholdConfig& cfg) {
  using Scalar = typename Derived::Scalar;
  const int level = otsu_threshold(map);
  return map.derived().unaryExpr([&](Scalar v) {
    return static_cast<int>(quantize_level(v)) > level && static_cast<double>(v) >= cfg.t_floor;
  });
}

// Square structuring element of odd side `kernel`. Pixels outside the image
// count as background for both operations.
Mask erode(const Mask& mask, int kernel);
Mask dilate(const Mask& mask, int kernel);

/// `iterations` erosions followed by `iterations` dilations.
Mask morph_open(const Mask& mask, int kernel, int iterations);

}  // namespace lesioncam
