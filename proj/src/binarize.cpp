#include "lesioncam/binarize.hpp"

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>
#include <stdexcept>
#include <string>

namespace lesioncam {
namespace {

void check_kernel(int kernel) {
  if (kernel < 1 || kernel % 2 == 0) {
    throw std::invalid_argument("structuring element size must be odd and >= 1, got " + std::to_string(kernel));
  }
}

// One-dimensional pass along rows (transpose for columns). Erosion needs the
// whole window in bounds and set; dilation needs any in-bounds pixel set.
template <bool Erode>
Mask pass_rows(const Mask& in, int radius) {
  const Index rows = in.rows(), cols = in.cols();
  Mask out(rows, cols);
  for (Index y = 0; y < rows; ++y) {
    // Running count of set pixels via prefix sums.
    std::vector<Index> prefix(static_cast<std::size_t>(cols) + 1, 0);
    for (Index x = 0; x < cols; ++x) prefix[static_cast<std::size_t>(x) + 1] = prefix[static_cast<std::size_t>(x)] + in(y, x);
    for (Index x = 0; x < cols; ++x) {
      const Index lo = x - radius, hi = x + radius;
      const Index clo = std::max<Index>(lo, 0), chi = std::min<Index>(hi, cols - 1);
      const Index set = prefix[static_cast<std::size_t>(chi) + 1] - prefix[static_cast<std::size_t>(clo)];
      if constexpr (Erode) {
        out(y, x) = lo >= 0 && hi < cols && set == 2 * radius + 1;
      } else {
        out(y, x) = set > 0;
      }
    }
  }
  return out;
}

template <bool Erode>
Mask separable(const Mask& mask, int kernel) {
  check_kernel(kernel);
  const int radius = kernel / 2;
  if (radius == 0) return mask;
  const Mask horizontal = pass_rows<Erode>(mask, radius);
  const Mask transposed = horizontal.transpose();
  return pass_rows<Erode>(transposed, radius).transpose();
}

}  // namespace

void ThresholdConfig::validate() const {
  if (!(t_floor >= 0.0 && t_floor <= 1.0)) throw std::invalid_argument("t_floor must be in [0,1]");
  check_kernel(open_kernel);
  if (open_iterations < 0) throw std::invalid_argument("open_iterations must be >= 0");
}

Mask erode(const Mask& mask, int kernel) { return separable<true>(mask, kernel); }

Mask dilate(const Mask& mask, int kernel) { return separable<false>(mask, kernel); }

Mask morph_open(const Mask& mask, int kernel, int iterations) {
  check_kernel(kernel);
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  Mask out = mask;
  for (int i = 0; i < iterations; ++i) out = erode(out, kernel);
  for (int i = 0; i < iterations; ++i) out = dilate(out, kernel);
  return out;
}

namespace {

using u128 = unsigned __int128;

// Sign of a/b - c/d for b, d > 0, by simultaneous continued-fraction expansion
// so that no product can overflow.
int compare_ratio(u128 a, u128 b, u128 c, u128 d) {
  int sign = 1;
  while (true) {
    const u128 qa = a / b, qc = c / d;
    if (qa != qc) return qa < qc ? -sign : sign;
    a -= qa * b;
    c -= qc * d;
    if (a == 0 || c == 0) {
      if (a == 0 && c == 0) return 0;
      return a == 0 ? -sign : sign;
    }
    std::swap(a, b);
    std::swap(c, d);
    sign = -sign;
  }
}

}  // namespace

int otsu_threshold(const LevelHistogram& hist) {
  // sigma_b^2(T) = (S0*N - S*n0)^2 / (N^2 * n0 * n1); the N^2 is common to
  // every candidate and dropped.
  std::uint64_t total = 0, level_sum = 0;
  int occupied = 0, only_level = 0;
  for (int q = 0; q < 256; ++q) {
    total += hist[static_cast<std::size_t>(q)];
    level_sum += static_cast<std::uint64_t>(q) * hist[static_cast<std::size_t>(q)];
    if (hist[static_cast<std::size_t>(q)] != 0) {
      ++occupied;
      only_level = q;
    }
  }
  if (occupied <= 1) return only_level;
  if (total > (std::uint64_t{1} << 28)) throw std::length_error("otsu_threshold: more than 2^28 samples");

  int best = -1;
  u128 best_num = 0, best_den = 1;
  std::uint64_t n0 = 0, s0 = 0;
  for (int t = 0; t < 255; ++t) {
    n0 += hist[static_cast<std::size_t>(t)];
    s0 += static_cast<std::uint64_t>(t) * hist[static_cast<std::size_t>(t)];
    const std::uint64_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const auto lhs = static_cast<__int128>(s0) * total;
    const auto rhs = static_cast<__int128>(level_sum) * n0;
    const u128 diff = static_cast<u128>(lhs > rhs ? lhs - rhs : rhs - lhs);
    const u128 num = diff * diff;
    const u128 den = static_cast<u128>(n0) * n1;
    if (best < 0 || compare_ratio(num, den, best_num, best_den) > 0) {
      best = t;
      best_num = num;
      best_den = den;
    }
  }
  return best;
}

}  // namespace lesioncam
