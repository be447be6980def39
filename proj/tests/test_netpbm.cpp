#include "lesioncam/errors.hpp"
#include "lesioncam/netpbm.hpp"

#include <doctest.h>

#include <cstring>
#include <random>
#include <string>

using namespace lesioncam;

namespace {

std::vector<std::byte> bytes_of(const std::string& s) {
  std::vector<std::byte> b(s.size());
  std::memcpy(b.data(), s.data(), s.size());
  return b;
}

FormatError::Kind pgm_error(const std::string& s) {
  try {
    netpbm::decode_pgm(bytes_of(s));
  } catch (const FormatError& e) {
    return e.kind();
  }
  FAIL("decode_pgm did not throw");
  return FormatError::Kind::BadMagic;
}

}  // namespace

TEST_CASE("pgm P5 2x2") {
  const auto img = netpbm::decode_pgm(bytes_of(std::string("P5 2 2 255\n") + "\x01\x02\x03\xff"));
  REQUIRE(img.rows() == 2);
  REQUIRE(img.cols() == 2);
  CHECK(img(0, 1) == 2);
  CHECK(img(1, 0) == 3);
  CHECK(img(1, 1) == 255);
}

TEST_CASE("pgm header with comments") {
  const auto img = netpbm::decode_pgm(bytes_of(std::string("P5\n# mask\n3 1\n# c\n255\n") + "abc"));
  CHECK(img.cols() == 3);
  CHECK(img(0, 2) == 'c');
}

TEST_CASE("pgm rejects unsupported variants") {
  CHECK(pgm_error("P2 2 2 255\n0 0 0 0") == FormatError::Kind::BadHeader);
  CHECK(pgm_error("P5 2 2 65535\n12345678") == FormatError::Kind::BadHeader);
  CHECK(pgm_error("P5 2 2 1\n1234") == FormatError::Kind::BadHeader);
  CHECK(pgm_error("P5 0 2 255\n") == FormatError::Kind::BadHeader);
  CHECK(pgm_error("P5 2 x 255\n") == FormatError::Kind::BadHeader);
  CHECK(pgm_error("P5 2 2 255\n123") == FormatError::Kind::TruncatedData);
}

TEST_CASE("pgm property: random images round-trip") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dim(1, 40), px(0, 255);
  for (int trial = 0; trial < 100; ++trial) {
    Gray8 img(dim(rng), dim(rng));
    for (Index i = 0; i < img.size(); ++i) img.data()[i] = static_cast<std::uint8_t>(px(rng));
    const auto bytes = netpbm::encode_pgm(img);
    const auto back = netpbm::decode_pgm(bytes);
    REQUIRE(back.rows() == img.rows());
    CHECK((back == img).all());
    CHECK(netpbm::encode_pgm(back) == bytes);
  }
}

TEST_CASE("ppm P6 layout is interleaved RGB") {
  Gray8 g(1, 2);
  g << 10, 20;
  auto rgb = netpbm::gray_to_rgb(g);
  rgb.set(0, 1, 255, 0, 0);
  const auto bytes = netpbm::encode_ppm(rgb);
  const std::string header = "P6\n2 1\n255\n";
  REQUIRE(bytes.size() == header.size() + 6);
  CHECK(std::memcmp(bytes.data(), header.data(), header.size()) == 0);
  const auto* px = bytes.data() + header.size();
  CHECK(std::to_integer<int>(px[0]) == 10);
  CHECK(std::to_integer<int>(px[2]) == 10);
  CHECK(std::to_integer<int>(px[3]) == 255);
  CHECK(std::to_integer<int>(px[4]) == 0);
}

TEST_CASE("mask <-> gray") {
  Gray8 g(1, 3);
  g << 0, 1, 255;
  const Mask m = netpbm::to_mask(g);
  CHECK(!m(0, 0));
  CHECK(m(0, 1));
  const Gray8 back = netpbm::from_mask(m);
  CHECK(back(0, 1) == 255);
  CHECK(back(0, 0) == 0);
}
