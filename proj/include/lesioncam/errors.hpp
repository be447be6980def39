#pragma once

#include <stdexcept>
#include <string>

namespace lesioncam {

/// Malformed or inconsistent input data (bad headers, shape mismatches).
/// The CLI maps this to exit code 3.
class FormatError : public std::runtime_error {
 public:
  enum class Kind {
    BadMagic,
    UnsupportedVersion,
    UnsupportedDtype,
    BadDims,
    DimOverflow,
    TruncatedPayload,
    TrailingData,
    BadHeader,
    TruncatedData,
    MalformedLine,
    InvertedBox,
    ShapeMismatch,
    NonFinite,
    MissingScore,
  };

  FormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// CSV parse failure tied to a 1-based line number.
class LineError : public FormatError {
 public:
  LineError(Kind kind, std::size_t line_no, const std::string& what)
      : FormatError(kind, "line " + std::to_string(line_no) + ": " + what), line_no_(line_no) {}

  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

/// File system failures (exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation has no ground truth to measure against (exit code 4).
class NoGroundTruth : public std::runtime_error {
 public:
  NoGroundTruth() : std::runtime_error("no ground-truth boxes: metrics are undefined") {}
};

}  // namespace lesioncam
