#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lesioncam::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kIoError = 2;
inline constexpr int kFormatError = 3;
inline constexpr int kNoGroundTruth = 4;

/// Runs the command line `argv[0] subcommand --flags...`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Same, without argv[0]; convenient for in-process callers and tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lesioncam::cli
