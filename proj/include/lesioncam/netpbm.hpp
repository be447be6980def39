#pragma once

// Binary netpbm rasters: PGM P5 (maxval 255) in, PGM P5 / PPM P6 out.

#include "lesioncam/core.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lesioncam::netpbm {

/// Planar 8-bit RGB raster.
struct Rgb8 {
  std::array<Gray8, 3> planes;

  Index rows() const { return planes[0].rows(); }
  Index cols() const { return planes[0].cols(); }
  void set(Index y, Index x, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    planes[0](y, x) = r;
    planes[1](y, x) = g;
    planes[2](y, x) = b;
  }
};

Gray8 decode_pgm(std::span<const std::byte> bytes);
std::vector<std::byte> encode_pgm(const Gray8& image);
std::vector<std::byte> encode_ppm(const Rgb8& image);

Gray8 read_pgm(const std::string& path);
void write_pgm(const std::string& path, const Gray8& image);
void write_ppm(const std::string& path, const Rgb8& image);

/// Nonzero pixels are foreground.
inline Mask to_mask(const Gray8& image) { return image != std::uint8_t{0}; }

/// 0 = background, 255 = foreground.
inline Gray8 from_mask(const Mask& mask) {
  return mask.select(Gray8::Constant(mask.rows(), mask.cols(), 255), Gray8::Zero(mask.rows(), mask.cols()));
}

inline Rgb8 gray_to_rgb(const Gray8& image) { return Rgb8{{image, image, image}}; }

}  // namespace lesioncam::netpbm
