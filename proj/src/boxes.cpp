#include "lesioncam/boxes.hpp"

#include "lesioncam/errors.hpp"
#include "io_util.hpp"

#include <charconv>
#include <cmath>

namespace lesioncam {
namespace {

using Kind = FormatError::Kind;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  if (field.empty()) return false;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

BoxRecord parse_record(std::string_view line, std::size_t line_no) {
  const auto fields = split_fields(line);
  if (fields.size() != 5 && fields.size() != 6) {
    throw LineError(Kind::MalformedLine, line_no, "expected 5 or 6 fields, got " + std::to_string(fields.size()));
  }
  BoxRecord rec;
  if (fields[0].empty()) throw LineError(Kind::MalformedLine, line_no, "empty image_id");
  rec.image_id = std::string(fields[0]);

  static constexpr const char* kNames[] = {"x_min", "y_min", "x_max", "y_max"};
  std::int64_t coords[4];
  for (int i = 0; i < 4; ++i) {
    if (!parse_number(fields[static_cast<std::size_t>(i + 1)], coords[i]) || coords[i] < 0) {
      throw LineError(Kind::MalformedLine, line_no, std::string("bad ") + kNames[i]);
    }
  }
  rec.box = Box{coords[0], coords[1], coords[2], coords[3]};
  if (!rec.box.valid()) {
    throw LineError(Kind::InvertedBox, line_no, "box must satisfy x_min < x_max and y_min < y_max");
  }

  if (fields.size() == 6 && !fields[5].empty()) {
    double score = 0.0;
    if (!parse_number(fields[5], score) || !(score >= 0.0 && score <= 1.0)) {
      throw LineError(Kind::MalformedLine, line_no, "score must be a number in [0,1]");
    }
    rec.score = score;
  }
  return rec;
}

}  // namespace

std::vector<BoxRecord> read_boxes(std::string_view text) {
  std::vector<BoxRecord> records;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!seen_header) {
      if (line != kBoxCsvHeader) {
        throw LineError(Kind::MalformedLine, line_no, "expected header '" + std::string(kBoxCsvHeader) + "'");
      }
      seen_header = true;
      continue;
    }
    if (line.empty()) continue;
    records.push_back(parse_record(line, line_no));
  }
  if (!seen_header) throw LineError(Kind::MalformedLine, 1, "missing header");
  return records;
}

std::string write_boxes(const std::vector<BoxRecord>& records) {
  std::string out(kBoxCsvHeader);
  out += '\n';
  char buf[64];
  for (const auto& r : records) {
    if (r.image_id.empty() || r.image_id.find_first_of(",\r\n") != std::string::npos) {
      throw FormatError(Kind::MalformedLine, "image_id '" + r.image_id + "' is empty or contains a separator");
    }
    if (!r.box.valid()) throw FormatError(Kind::InvertedBox, "box for image '" + r.image_id + "' is not valid");
    out += r.image_id;
    for (auto v : {r.box.x_min, r.box.y_min, r.box.x_max, r.box.y_max}) {
      out += ',';
      out += std::to_string(v);
    }
    out += ',';
    if (r.score) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), *r.score);
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

std::vector<BoxRecord> read_boxes_file(const std::string& path) {
  const auto text = detail::read_text(path);
  try {
    return read_boxes(text);
  } catch (const LineError& e) {
    throw FormatError(e.kind(), path + ": " + e.what());
  }
}

void write_boxes_file(const std::string& path, const std::vector<BoxRecord>& records) {
  detail::write_text(path, write_boxes(records));
}

}  // namespace lesioncam
