#include "lesioncam/netpbm.hpp"

#include "lesioncam/errors.hpp"
#include "io_util.hpp"

#include <cctype>
#include <cstring>
#include <limits>

namespace lesioncam::netpbm {
namespace {

using Kind = FormatError::Kind;

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const std::byte> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then parses an unsigned decimal.
  std::size_t next_uint(const char* field) {
    skip_space_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(peek())) {
      value = value * 10 + static_cast<std::size_t>(peek() - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        throw FormatError(Kind::BadHeader, std::string("PGM ") + field + ": value too large");
      }
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw FormatError(Kind::BadHeader, std::string("PGM ") + field + ": expected a number");
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(peek())) {
      throw FormatError(Kind::BadHeader, "PGM header: missing whitespace before raster");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  unsigned char peek() const { return std::to_integer<unsigned char>(bytes_[pos_]); }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(peek())) {
        ++pos_;
      } else if (peek() == '#') {
        while (pos_ < bytes_.size() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::byte> bytes_;
  std::size_t pos_ = 2;
};

std::vector<std::byte> encode_raster(const char* magic, Index rows, Index cols, int channels,
                                     const auto& sample) {
  const std::string header = std::string(magic) + "\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
  std::vector<std::byte> out(header.size() + static_cast<std::size_t>(rows * cols * channels));
  std::memcpy(out.data(), header.data(), header.size());
  std::size_t k = header.size();
  for (Index y = 0; y < rows; ++y) {
    for (Index x = 0; x < cols; ++x) {
      for (int c = 0; c < channels; ++c) out[k++] = std::byte{sample(y, x, c)};
    }
  }
  return out;
}

}  // namespace

Gray8 decode_pgm(std::span<const std::byte> bytes) {
  if (bytes.size() < 2 || std::to_integer<char>(bytes[0]) != 'P' || std::to_integer<char>(bytes[1]) != '5') {
    throw FormatError(Kind::BadHeader, "PGM magic: only binary P5 is supported");
  }
  HeaderScanner scan(bytes);
  const auto width = scan.next_uint("width");
  const auto height = scan.next_uint("height");
  const auto maxval = scan.next_uint("maxval");
  if (width == 0 || height == 0) throw FormatError(Kind::BadHeader, "PGM dims: width and height must be >= 1");
  if (maxval != 255) {
    throw FormatError(Kind::BadHeader, "PGM maxval: only 255 is supported, got " + std::to_string(maxval));
  }
  scan.single_whitespace();

  const std::size_t need = width * height;
  const std::size_t have = bytes.size() - scan.position();
  if (have < need) {
    throw FormatError(Kind::TruncatedData,
                      "PGM raster: expected " + std::to_string(need) + " bytes, found " + std::to_string(have));
  }
  Gray8 image(static_cast<Index>(height), static_cast<Index>(width));
  std::memcpy(image.data(), bytes.data() + scan.position(), need);
  return image;
}

std::vector<std::byte> encode_pgm(const Gray8& image) {
  return encode_raster("P5", image.rows(), image.cols(), 1, [&](Index y, Index x, int) { return image(y, x); });
}

std::vector<std::byte> encode_ppm(const Rgb8& image) {
  return encode_raster("P6", image.rows(), image.cols(), 3,
                       [&](Index y, Index x, int c) { return image.planes[static_cast<std::size_t>(c)](y, x); });
}

Gray8 read_pgm(const std::string& path) {
  const auto bytes = detail::read_bytes(path);
  try {
    return decode_pgm(bytes);
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), path + ": " + e.what());
  }
}

void write_pgm(const std::string& path, const Gray8& image) { detail::write_bytes(path, encode_pgm(image)); }

void write_ppm(const std::string& path, const Rgb8& image) { detail::write_bytes(path, encode_ppm(image)); }

}  // namespace lesioncam::netpbm
