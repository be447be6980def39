#pragma once

#include "lesioncam/boxes.hpp"
#include "lesioncam/core.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lesioncam {

/// One 8-connected foreground component and its enclosing rectangle.
struct Region {
  int label = 0;
  std::int64_t pixel_count = 0;
  Box bbox;

  friend bool operator==(const Region&, const Region&) = default;
};

struct SizeFilter {
  std::int64_t min_area_px = 25;  ///< drop boxes smaller than this (bbox area)
  double max_area_frac = 1.0;     ///< drop boxes larger than this fraction of the image

  void validate() const;
};

using LabelImage = Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Labeling {
  LabelImage labels;            ///< 0 = background, else Region::label
  std::vector<Region> regions;  ///< regions[i].label == i + 1
};

/// 8-connected labeling. Components are numbered 1.. in raster order of
/// their first pixel.
Labeling label_components(const Mask& mask);

inline std::vector<Region> connected_components(const Mask& mask) { return label_components(mask).regions; }

/// Keeps regions whose bbox area lies in [min_area_px, max_area_frac * image_area].
std::vector<Region> filter_boxes(std::span<const Region> regions, const SizeFilter& filter, std::int64_t image_area);

/// One unscored ground-truth record per lesion component, no filtering.
std::vector<BoxRecord> mask_to_gt_boxes(const Mask& mask, const std::string& image_id);

/// Scores each region with the maximum map value inside its bbox.
template <typename Derived>
std::vector<BoxRecord> score_boxes(std::span<const Region> regions, const Eigen::DenseBase<Derived>& map,
                                   const std::string& image_id) {
  std::vector<BoxRecord> out;
  out.reserve(regions.size());
  for (const auto& r : regions) {
    const auto& b = r.bbox;
    const double score = static_cast<double>(map.block(b.y_min, b.x_min, b.height(), b.width()).maxCoeff());
    out.push_back({image_id, b, std::clamp(score, 0.0, 1.0)});
  }
  return out;
}

}  // namespace lesioncam
