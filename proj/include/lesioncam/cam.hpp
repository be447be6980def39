#pragma once

// Class activation maps: channel-weighted feature sums, gradient-averaged
// channel weights, min-max normalization and bilinear resampling.

#include "lesioncam/core.hpp"
#include "lesioncam/errors.hpp"
#include "lesioncam/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace lesioncam {

/// L[y][x] = sum_k w_k * A[k][y][x], optionally clamped at zero. `weights`
/// may be any column-vector expression of length C.
template <typename Scalar, typename WeightsDerived>
Heatmap<Scalar> compute_cam(const FeatureTensor<Scalar>& features, const Eigen::MatrixBase<WeightsDerived>& weights,
                            bool relu = false) {
  if (weights.size() != features.channels()) {
    throw FormatError(FormatError::Kind::ShapeMismatch,
                      "class weights have length " + std::to_string(weights.size()) + " but features have " +
                          std::to_string(features.channels()) + " channels");
  }
  Heatmap<Scalar> cam(features.height(), features.width());
  Eigen::Map<Eigen::Matrix<Scalar, 1, Eigen::Dynamic>>(cam.data(), cam.size()).noalias() =
      weights.transpose() * features.values();
  if (relu) cam = cam.max(Scalar(0));
  return cam;
}

/// GradCAM channel weights: spatial mean of each gradient channel.
template <typename Scalar>
ClassWeights<Scalar> gradcam_weights(const GradientTensor<Scalar>& grads) {
  return grads.values().rowwise().mean();
}

/// Min-max rescale into [0,1]. A constant map becomes all zeros.
template <typename Derived>
Heatmap<typename Derived::Scalar> normalize(const Eigen::DenseBase<Derived>& map) {
  using Scalar = typename Derived::Scalar;
  const Heatmap<Scalar> m = map;
  if (m.size() == 0) return m;
  const Scalar lo = m.minCoeff();
  const Scalar hi = m.maxCoeff();
  if (!(hi > lo)) return Heatmap<Scalar>::Zero(m.rows(), m.cols());
  return (m - lo) / (hi - lo);
}

namespace detail {

template <typename Scalar>
struct LerpTap {
  Index lo;
  Index hi;
  Scalar frac;
};

// Pixel-centre alignment: s = (d + 0.5) * in / out - 0.5, clamped to [0, in-1].
template <typename Scalar>
std::vector<LerpTap<Scalar>> lerp_taps(Index in, Index out) {
  std::vector<LerpTap<Scalar>> taps(static_cast<std::size_t>(out));
  const Scalar scale = static_cast<Scalar>(in) / static_cast<Scalar>(out);
  for (Index d = 0; d < out; ++d) {
    Scalar s = (static_cast<Scalar>(d) + Scalar(0.5)) * scale - Scalar(0.5);
    s = std::clamp(s, Scalar(0), static_cast<Scalar>(in - 1));
    const auto lo = static_cast<Index>(std::floor(s));
    taps[static_cast<std::size_t>(d)] = {lo, std::min(lo + 1, in - 1), s - static_cast<Scalar>(lo)};
  }
  return taps;
}

}  // namespace detail

/// Bilinear resampling to out_h x out_w with pixel-centre alignment. Output
/// values are convex combinations of input values (std::lerp keeps them
/// inside the input range).
template <typename Derived>
Heatmap<typename Derived::Scalar> upsample_bilinear(const Eigen::DenseBase<Derived>& map, Index out_h, Index out_w) {
  using Scalar = typename Derived::Scalar;
  if (out_h < 1 || out_w < 1) throw std::invalid_argument("upsample_bilinear: output dims must be >= 1");
  const Heatmap<Scalar> src = map;
  const auto ty = detail::lerp_taps<Scalar>(src.rows(), out_h);
  const auto tx = detail::lerp_taps<Scalar>(src.cols(), out_w);

  // Columns first (H_in x W_out), then rows.
  Heatmap<Scalar> wide(src.rows(), out_w);
  for (Index x = 0; x < out_w; ++x) {
    const auto& t = tx[static_cast<std::size_t>(x)];
    wide.col(x) = src.col(t.lo).binaryExpr(src.col(t.hi), [f = t.frac](Scalar a, Scalar b) { return std::lerp(a, b, f); });
  }
  Heatmap<Scalar> out(out_h, out_w);
  for (Index y = 0; y < out_h; ++y) {
    const auto& t = ty[static_cast<std::size_t>(y)];
    out.row(y) = wide.row(t.lo).binaryExpr(wide.row(t.hi), [f = t.frac](Scalar a, Scalar b) { return std::lerp(a, b, f); });
  }
  return out;
}

}  // namespace lesioncam
