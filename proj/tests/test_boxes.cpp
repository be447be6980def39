#include "lesioncam/boxes.hpp"
#include "lesioncam/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace lesioncam;

namespace {

const std::string kHeader = "image_id,x_min,y_min,x_max,y_max,score\n";

std::pair<FormatError::Kind, std::size_t> line_error(const std::string& text) {
  try {
    read_boxes(text);
  } catch (const LineError& e) {
    return {e.kind(), e.line_no()};
  }
  FAIL("read_boxes did not throw");
  return {};
}

}  // namespace

TEST_CASE("read_boxes parses GT and scored rows") {
  const auto recs = read_boxes(kHeader + "img1,3,2,8,6\nimg1,0,0,4,4,\nimg2,1,1,2,2,0.75\n");
  REQUIRE(recs.size() == 3);
  CHECK(recs[0] == BoxRecord{"img1", Box{3, 2, 8, 6}, std::nullopt});
  CHECK(!recs[1].score);
  CHECK(recs[2].score == doctest::Approx(0.75));
}

TEST_CASE("read_boxes tolerates CRLF and blank lines") {
  const auto recs = read_boxes("image_id,x_min,y_min,x_max,y_max,score\r\nimg1,3,2,8,6\r\n\r\n");
  CHECK(recs.size() == 1);
}

TEST_CASE("read_boxes errors carry line numbers") {
  CHECK(line_error(kHeader + "img1,5,5,5,9") == std::pair{FormatError::Kind::InvertedBox, std::size_t{2}});
  CHECK(line_error(kHeader + "img1,0,0,1,1\nimg1,0,9,1,3") == std::pair{FormatError::Kind::InvertedBox, std::size_t{3}});
  CHECK(line_error(kHeader + "img1,0,0,1") == std::pair{FormatError::Kind::MalformedLine, std::size_t{2}});
  CHECK(line_error(kHeader + "img1,a,0,1,1").first == FormatError::Kind::MalformedLine);
  CHECK(line_error(kHeader + "img1,-1,0,1,1").first == FormatError::Kind::MalformedLine);
  CHECK(line_error(kHeader + "img1,0,0,1,1,1.5").first == FormatError::Kind::MalformedLine);
  CHECK(line_error(kHeader + ",0,0,1,1").first == FormatError::Kind::MalformedLine);
  CHECK(line_error("img1,0,0,1,1\n") == std::pair{FormatError::Kind::MalformedLine, std::size_t{1}});
  CHECK(line_error("").first == FormatError::Kind::MalformedLine);
}

TEST_CASE("write_boxes rejects unwritable records") {
  CHECK_THROWS_AS(write_boxes({{"a,b", Box{0, 0, 1, 1}, {}}}), FormatError);
  CHECK_THROWS_AS(write_boxes({{"a", Box{2, 0, 1, 1}, {}}}), FormatError);
}

TEST_CASE("box CSV property: random records round-trip") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto recs = oracle::random_boxes(rng, 10, 10, false, 500);
    for (auto& r : recs) {
      if (u(rng) < 0.5) r.score = u(rng);  // full-precision doubles
    }
    recs.resize(std::min<std::size_t>(recs.size(), 100));
    const auto text = write_boxes(recs);
    CHECK(read_boxes(text) == recs);
    CHECK(write_boxes(read_boxes(text)) == text);
  }
}

TEST_CASE("read_boxes property: generated invalid boxes are rejected") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(0, 30);
  for (int trial = 0; trial < 300; ++trial) {
    const int x0 = c(rng), y0 = c(rng), x1 = c(rng), y1 = c(rng);
    const std::string row = "im," + std::to_string(x0) + "," + std::to_string(y0) + "," + std::to_string(x1) + "," +
                            std::to_string(y1) + "\n";
    if (x0 < x1 && y0 < y1) {
      CHECK(read_boxes(kHeader + row).size() == 1);
    } else {
      CHECK_THROWS_AS(read_boxes(kHeader + row), LineError);
    }
  }
}
