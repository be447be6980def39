#pragma once

// CAMT: minimal little-endian tensor container.
//
//   offset 0   "CAMT"
//   offset 4   version (u8, = 1)
//   offset 5   dtype   (u8, 0 = f32, 1 = u8)
//   offset 6   ndim    (u8, 1..4)
//   offset 7   ndim x u32 dims
//   then       row-major payload, innermost dimension last

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace lesioncam::camt {

inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kMaxElements = std::size_t{1} << 31;

enum class Dtype : std::uint8_t { F32 = 0, U8 = 1 };

struct Tensor {
  std::vector<std::uint32_t> dims;
  std::variant<std::vector<float>, std::vector<std::uint8_t>> values;

  Dtype dtype() const { return values.index() == 0 ? Dtype::F32 : Dtype::U8; }
  std::size_t element_count() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

/// Decode a CAMT byte stream. Throws FormatError naming the offending field.
Tensor decode(std::span<const std::byte> bytes);

/// Canonical encoding; throws FormatError on inconsistent dims/values.
std::vector<std::byte> encode(const Tensor& tensor);

Tensor read_file(const std::string& path);
void write_file(const std::string& path, const Tensor& tensor);

}  // namespace lesioncam::camt
