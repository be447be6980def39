#pragma once

// End-to-end composition used by the CLI: evidence tensors -> normalized map
// at image resolution -> scored lesion boxes.

#include "lesioncam/binarize.hpp"
#include "lesioncam/cam.hpp"
#include "lesioncam/regions.hpp"

#include <string>
#include <vector>

namespace lesioncam {

inline constexpr Index kDefaultInputSize = 224;

struct DetectConfig {
  ThresholdConfig threshold;
  SizeFilter size;

  void validate() const {
    threshold.validate();
    size.validate();
  }
};

/// compute_cam -> bilinear resize to out_h x out_w -> min-max normalize.
template <typename Scalar, typename WeightsDerived>
Heatmap<Scalar> activation_map(const FeatureTensor<Scalar>& features, const Eigen::MatrixBase<WeightsDerived>& weights,
                               bool relu,
                               Index out_h = kDefaultInputSize, Index out_w = kDefaultInputSize) {
  return normalize(upsample_bilinear(compute_cam(features, weights, relu), out_h, out_w));
}

template <typename Scalar>
Heatmap<Scalar> gradcam_map(const FeatureTensor<Scalar>& features, const GradientTensor<Scalar>& grads, bool relu,
                            Index out_h = kDefaultInputSize, Index out_w = kDefaultInputSize) {
  if (!features.same_shape(grads)) {
    throw FormatError(FormatError::Kind::ShapeMismatch, "gradient tensor shape differs from feature tensor shape");
  }
  return activation_map(features, gradcam_weights(grads), relu, out_h, out_w);
}

/// threshold -> opening -> components -> size filter -> max-activation scores.
/// The map is re-normalized first (a no-op for already normalized maps).
template <typename Derived>
std::vector<BoxRecord> detect_lesions(const Eigen::DenseBase<Derived>& map, const std::string& image_id,
                                      const DetectConfig& cfg = {}) {
  cfg.validate();
  const auto norm = normalize(map);
  const Mask fg = morph_open(binarize(norm, cfg.threshold), cfg.threshold.open_kernel, cfg.threshold.open_iterations);
  const auto regions = connected_components(fg);
  const auto kept = filter_boxes(regions, cfg.size, norm.size());
  return score_boxes(kept, norm, image_id);
}

}  // namespace lesioncam
