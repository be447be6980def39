#include "lesioncam/regions.hpp"

#include <numeric>
#include <stdexcept>

namespace lesioncam {
namespace {

class DisjointSet {
 public:
  std::int32_t make() {
    parent_.push_back(static_cast<std::int32_t>(parent_.size()));
    return parent_.back();
  }

  std::int32_t find(std::int32_t x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  // The smaller provisional label (earlier in raster order) stays the root.
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
  }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

void SizeFilter::validate() const {
  if (min_area_px < 0) throw std::invalid_argument("min_area_px must be >= 0");
  if (!(max_area_frac > 0.0 && max_area_frac <= 1.0)) throw std::invalid_argument("max_area_frac must be in (0,1]");
}

Labeling label_components(const Mask& mask) {
  const Index rows = mask.rows(), cols = mask.cols();
  Labeling out;
  out.labels = LabelImage::Zero(rows, cols);
  auto& labels = out.labels;

  // First pass: provisional labels from the already-scanned neighbours
  // (W, NW, N, NE), equivalences recorded in a disjoint set. Provisional ids
  // are 1-based; slot 0 is a dummy.
  DisjointSet sets;
  sets.make();
  for (Index y = 0; y < rows; ++y) {
    for (Index x = 0; x < cols; ++x) {
      if (!mask(y, x)) continue;
      std::int32_t current = 0;
      const auto visit = [&](Index ny, Index nx) {
        if (ny < 0 || nx < 0 || nx >= cols) return;
        const auto l = labels(ny, nx);
        if (l == 0) return;
        if (current == 0) {
          current = l;
        } else {
          sets.unite(current, l);
        }
      };
      visit(y, x - 1);
      visit(y - 1, x - 1);
      visit(y - 1, x);
      visit(y - 1, x + 1);
      labels(y, x) = current != 0 ? current : sets.make();
    }
  }

  // Second pass: resolve to dense final labels. Roots are the smallest
  // provisional id of each set, and provisional ids grow in raster order, so
  // numbering roots on first encounter yields first-pixel raster order.
  std::vector<std::int32_t> final_label;
  for (Index y = 0; y < rows; ++y) {
    for (Index x = 0; x < cols; ++x) {
      const auto l = labels(y, x);
      if (l == 0) continue;
      const auto root = static_cast<std::size_t>(sets.find(l));
      if (final_label.size() <= root) final_label.resize(root + 1, 0);
      auto& f = final_label[root];
      if (f == 0) {
        f = static_cast<std::int32_t>(out.regions.size()) + 1;
        out.regions.push_back({f, 0, Box{x, y, x + 1, y + 1}});
      }
      labels(y, x) = f;
      auto& r = out.regions[static_cast<std::size_t>(f) - 1];
      ++r.pixel_count;
      r.bbox.x_min = std::min<std::int64_t>(r.bbox.x_min, x);
      r.bbox.y_min = std::min<std::int64_t>(r.bbox.y_min, y);
      r.bbox.x_max = std::max<std::int64_t>(r.bbox.x_max, x + 1);
      r.bbox.y_max = std::max<std::int64_t>(r.bbox.y_max, y + 1);
    }
  }
  return out;
}

std::vector<Region> filter_boxes(std::span<const Region> regions, const SizeFilter& filter, std::int64_t image_area) {
  if (image_area <= 0) throw std::invalid_argument("filter_boxes: image_area must be > 0");
  const double max_area = filter.max_area_frac * static_cast<double>(image_area);
  std::vector<Region> kept;
  for (const auto& r : regions) {
    const auto area = r.bbox.area();
    if (area >= filter.min_area_px && static_cast<double>(area) <= max_area) kept.push_back(r);
  }
  return kept;
}

std::vector<BoxRecord> mask_to_gt_boxes(const Mask& mask, const std::string& image_id) {
  std::vector<BoxRecord> out;
  for (const auto& r : connected_components(mask)) out.push_back({image_id, r.bbox, std::nullopt});
  return out;
}

}  // namespace lesioncam
