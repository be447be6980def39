#include "lesioncam/camt.hpp"
#include "lesioncam/errors.hpp"
#include "lesioncam/tensor.hpp"

#include <doctest.h>

#include <cstring>
#include <random>

using namespace lesioncam;

namespace {

camt::Tensor f32(std::vector<std::uint32_t> dims, std::vector<float> values) {
  return camt::Tensor{std::move(dims), std::move(values)};
}

FormatError::Kind decode_error(std::span<const std::byte> bytes) {
  try {
    camt::decode(bytes);
  } catch (const FormatError& e) {
    return e.kind();
  }
  FAIL("decode did not throw");
  return FormatError::Kind::BadHeader;
}

}  // namespace

TEST_CASE("camt round trip of a 2x2 tensor") {
  const auto t = f32({2, 2}, {1, 2, 3, 4});
  const auto bytes = camt::encode(t);
  CHECK(camt::decode(bytes) == t);
}

TEST_CASE("camt header arithmetic") {
  CHECK(camt::encode(f32({1}, {0.0f})).size() == 15);
  const auto bytes = camt::encode(f32({2, 3}, {1, 2, 3, 4, 5, 6}));
  CHECK(bytes.size() == 7 + 8 + 24);
  CHECK(std::memcmp(bytes.data(), "CAMT", 4) == 0);
  CHECK(std::to_integer<int>(bytes[4]) == 1);
  CHECK(std::to_integer<int>(bytes[5]) == 0);
  CHECK(std::to_integer<int>(bytes[6]) == 2);
  // dims little-endian
  CHECK(std::to_integer<int>(bytes[7]) == 2);
  CHECK(std::to_integer<int>(bytes[11]) == 3);
}

TEST_CASE("camt encoding is canonical") {
  const auto t = f32({3, 1, 2}, {0.5f, -1.f, 2.f, 3.f, 4.f, 5.f});
  CHECK(camt::encode(t) == camt::encode(t));
}

TEST_CASE("camt decode errors") {
  auto good = camt::encode(f32({3, 3}, std::vector<float>(9, 1.0f)));

  SUBCASE("bad magic") {
    auto b = good;
    b[0] = std::byte{'X'};
    CHECK(decode_error(b) == FormatError::Kind::BadMagic);
  }
  SUBCASE("truncated payload") {
    auto b = good;
    b.resize(b.size() - 4);  // 8 floats for a 3x3 tensor
    CHECK(decode_error(b) == FormatError::Kind::TruncatedPayload);
  }
  SUBCASE("trailing bytes") {
    auto b = good;
    b.push_back(std::byte{0});
    CHECK(decode_error(b) == FormatError::Kind::TrailingData);
  }
  SUBCASE("unsupported version") {
    auto b = good;
    b[4] = std::byte{2};
    CHECK(decode_error(b) == FormatError::Kind::UnsupportedVersion);
  }
  SUBCASE("unsupported dtype") {
    auto b = good;
    b[5] = std::byte{7};
    CHECK(decode_error(b) == FormatError::Kind::UnsupportedDtype);
  }
  SUBCASE("ndim out of range") {
    auto b = good;
    b[6] = std::byte{0};
    CHECK(decode_error(b) == FormatError::Kind::BadDims);
    b[6] = std::byte{5};
    CHECK(decode_error(b) == FormatError::Kind::BadDims);
  }
  SUBCASE("zero dim") {
    auto b = good;
    std::memset(b.data() + 7, 0, 4);
    CHECK(decode_error(b) == FormatError::Kind::BadDims);
  }
  SUBCASE("dims product overflow") {
    auto b = good;
    const std::uint32_t big = 1u << 16;
    std::memcpy(b.data() + 7, &big, 4);
    std::memcpy(b.data() + 11, &big, 4);
    CHECK(decode_error(b) == FormatError::Kind::DimOverflow);
  }
  SUBCASE("error names the field") {
    auto b = good;
    b[0] = std::byte{'X'};
    try {
      camt::decode(b);
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("magic") != std::string::npos);
    }
  }
}

TEST_CASE("camt encode rejects inconsistent tensors") {
  CHECK_THROWS_AS(camt::encode(f32({2, 2}, {1, 2, 3})), FormatError);
  CHECK_THROWS_AS(camt::encode(f32({}, {})), FormatError);
  camt::Tensor huge;
  huge.dims = {1u << 16, 1u << 16};
  CHECK_THROWS_AS(camt::encode(huge), FormatError);
}

TEST_CASE("camt property: random tensors round-trip bit-exactly") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ndim(1, 4), dim(1, 6), kind(0, 1);
  std::uniform_int_distribution<std::uint32_t> bits;
  for (int trial = 0; trial < 200; ++trial) {
    camt::Tensor t;
    const int nd = ndim(rng);
    std::size_t n = 1;
    for (int i = 0; i < nd; ++i) {
      t.dims.push_back(static_cast<std::uint32_t>(dim(rng)));
      n *= t.dims.back();
    }
    if (kind(rng) == 0) {
      std::vector<float> v(n);
      // arbitrary bit patterns, NaN payloads included
      for (auto& x : v) {
        const auto b = bits(rng);
        std::memcpy(&x, &b, 4);
      }
      t.values = v;
    } else {
      std::vector<std::uint8_t> v(n);
      for (auto& x : v) x = static_cast<std::uint8_t>(bits(rng));
      t.values = v;
    }
    const auto bytes = camt::encode(t);
    const auto back = camt::decode(bytes);
    CHECK(back.dims == t.dims);
    CHECK(camt::encode(back) == bytes);
  }
}

TEST_CASE("tensor adapters") {
  const auto t = f32({2, 1, 3}, {1, 2, 3, 4, 5, 6});
  const auto ft = feature_tensor_from_camt<double>(t);
  CHECK(ft.channels() == 2);
  CHECK(ft.height() == 1);
  CHECK(ft.width() == 3);
  CHECK(ft.channel(1)(0, 2) == 6.0);
  CHECK(feature_tensor_to_camt(ft) == t);

  CHECK(feature_tensor_from_camt<double>(f32({2, 2}, {1, 2, 3, 4})).channels() == 1);
  CHECK_THROWS_AS(feature_tensor_from_camt<double>(f32({4}, {1, 2, 3, 4})), FormatError);
  CHECK_THROWS_AS(feature_tensor_from_camt<double>(f32({2, 2}, {1, 2, NAN, 4})), FormatError);
  CHECK(class_weights_from_camt<double>(f32({1, 3}, {1, 2, 3})).size() == 3);
  CHECK_THROWS_AS(class_weights_from_camt<double>(f32({2, 3}, {1, 2, 3, 4, 5, 6})), FormatError);
  const auto hm = heatmap_from_camt<float>(f32({1, 2, 2}, {1, 2, 3, 4}));
  CHECK(hm(1, 0) == 3.0f);
  CHECK(heatmap_to_camt(hm) == f32({2, 2}, {1, 2, 3, 4}));
}
