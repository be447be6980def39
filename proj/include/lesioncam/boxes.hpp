#pragma once

#include "lesioncam/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lesioncam {

/// One detection or ground-truth box. Ground truth carries no score.
struct BoxRecord {
  std::string image_id;
  Box box;
  std::optional<double> score;

  friend bool operator==(const BoxRecord&, const BoxRecord&) = default;
};

inline constexpr std::string_view kBoxCsvHeader = "image_id,x_min,y_min,x_max,y_max,score";

/// Parse the box CSV schema. The header line is mandatory; blank lines are
/// skipped. Throws LineError (MalformedLine / InvertedBox) with the 1-based
/// line number.
std::vector<BoxRecord> read_boxes(std::string_view text);

/// Serialize records; unscored rows leave the score field empty. Scores use
/// the shortest round-trip decimal form.
std::string write_boxes(const std::vector<BoxRecord>& records);

std::vector<BoxRecord> read_boxes_file(const std::string& path);
void write_boxes_file(const std::string& path, const std::vector<BoxRecord>& records);

}  // namespace lesioncam
