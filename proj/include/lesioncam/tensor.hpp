#pragma once

#include "lesioncam/camt.hpp"
#include "lesioncam/core.hpp"
#include "lesioncam/errors.hpp"

#include <string>
#include <variant>
#include <vector>

namespace lesioncam {

/// C x H x W activations of one convolutional layer. Stored as a C x (H*W)
/// row-major matrix so per-channel reductions and channel mixing are plain
/// matrix expressions.
template <typename Scalar>
class FeatureTensor {
 public:
  using Storage = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  FeatureTensor() = default;
  FeatureTensor(Index channels, Index height, Index width)
      : values_(Storage::Zero(channels, height * width)), height_(height), width_(width) {}
  FeatureTensor(Storage values, Index height, Index width)
      : values_(std::move(values)), height_(height), width_(width) {
    if (values_.cols() != height_ * width_) {
      throw FormatError(FormatError::Kind::ShapeMismatch, "feature storage does not match H x W");
    }
  }

  Index channels() const { return values_.rows(); }
  Index height() const { return height_; }
  Index width() const { return width_; }

  const Storage& values() const { return values_; }
  Storage& values() { return values_; }

  Eigen::Map<Heatmap<Scalar>> channel(Index k) {
    return {values_.data() + k * height_ * width_, height_, width_};
  }
  Eigen::Map<const Heatmap<Scalar>> channel(Index k) const {
    return {values_.data() + k * height_ * width_, height_, width_};
  }

  bool same_shape(const FeatureTensor& other) const {
    return channels() == other.channels() && height_ == other.height_ && width_ == other.width_;
  }

 private:
  Storage values_;
  Index height_ = 0;
  Index width_ = 0;
};

/// dY^c/dA, laid out exactly like the features it differentiates.
template <typename Scalar>
using GradientTensor = FeatureTensor<Scalar>;

/// Per-channel importance w^c for one class.
template <typename Scalar>
using ClassWeights = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> camt_as_vector(const camt::Tensor& t, const std::string& what) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(static_cast<Index>(t.element_count()));
  std::visit(
      [&](const auto& src) {
        for (std::size_t i = 0; i < src.size(); ++i) v(static_cast<Index>(i)) = static_cast<Scalar>(src[i]);
      },
      t.values);
  if (!v.allFinite()) throw FormatError(FormatError::Kind::NonFinite, what + ": contains non-finite values");
  return v;
}

inline std::string dims_string(const std::vector<std::uint32_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

}  // namespace detail

/// Accepts dims [C,H,W] or [H,W] (single channel).
template <typename Scalar>
FeatureTensor<Scalar> feature_tensor_from_camt(const camt::Tensor& t, const std::string& what = "features") {
  Index c = 1, h = 0, w = 0;
  if (t.dims.size() == 3) {
    c = t.dims[0], h = t.dims[1], w = t.dims[2];
  } else if (t.dims.size() == 2) {
    h = t.dims[0], w = t.dims[1];
  } else {
    throw FormatError(FormatError::Kind::ShapeMismatch,
                      what + ": expected dims [C,H,W] or [H,W], got " + detail::dims_string(t.dims));
  }
  const auto flat = detail::camt_as_vector<Scalar>(t, what);
  typename FeatureTensor<Scalar>::Storage storage =
      Eigen::Map<const typename FeatureTensor<Scalar>::Storage>(flat.data(), c, h * w);
  return FeatureTensor<Scalar>(std::move(storage), h, w);
}

/// Accepts dims [C] or [1,C].
template <typename Scalar>
ClassWeights<Scalar> class_weights_from_camt(const camt::Tensor& t, const std::string& what = "weights") {
  const bool ok = t.dims.size() == 1 || (t.dims.size() == 2 && t.dims[0] == 1);
  if (!ok) {
    throw FormatError(FormatError::Kind::ShapeMismatch,
                      what + ": expected dims [C] or [1,C], got " + detail::dims_string(t.dims));
  }
  return detail::camt_as_vector<Scalar>(t, what);
}

/// Accepts dims [H,W] or [1,H,W].
template <typename Scalar>
Heatmap<Scalar> heatmap_from_camt(const camt::Tensor& t, const std::string& what = "map") {
  const auto& d = t.dims;
  const bool ok = d.size() == 2 || (d.size() == 3 && d[0] == 1);
  if (!ok) {
    throw FormatError(FormatError::Kind::ShapeMismatch,
                      what + ": expected dims [H,W] or [1,H,W], got " + detail::dims_string(d));
  }
  const Index h = d[d.size() - 2], w = d[d.size() - 1];
  const auto flat = detail::camt_as_vector<Scalar>(t, what);
  return Eigen::Map<const Heatmap<Scalar>>(flat.data(), h, w);
}

template <typename Derived>
camt::Tensor heatmap_to_camt(const Eigen::DenseBase<Derived>& map) {
  camt::Tensor t;
  t.dims = {static_cast<std::uint32_t>(map.rows()), static_cast<std::uint32_t>(map.cols())};
  std::vector<float> v(static_cast<std::size_t>(map.size()));
  Eigen::Map<Heatmap<float>>(v.data(), map.rows(), map.cols()) = map.derived().template cast<float>();
  t.values = std::move(v);
  return t;
}

template <typename Scalar>
camt::Tensor feature_tensor_to_camt(const FeatureTensor<Scalar>& f) {
  camt::Tensor t;
  t.dims = {static_cast<std::uint32_t>(f.channels()), static_cast<std::uint32_t>(f.height()),
            static_cast<std::uint32_t>(f.width())};
  std::vector<float> v(static_cast<std::size_t>(f.values().size()));
  Eigen::Map<Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(v.data(), f.channels(),
                                                                                    f.height() * f.width()) =
      f.values().template cast<float>();
  t.values = std::move(v);
  return t;
}

template <typename Derived>
camt::Tensor class_weights_to_camt(const Eigen::MatrixBase<Derived>& w) {
  camt::Tensor t;
  t.dims = {static_cast<std::uint32_t>(w.size())};
  std::vector<float> v(static_cast<std::size_t>(w.size()));
  Eigen::Map<Eigen::VectorXf>(v.data(), w.size()) = w.template cast<float>();
  t.values = std::move(v);
  return t;
}

}  // namespace lesioncam
