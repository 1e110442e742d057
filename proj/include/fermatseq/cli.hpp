#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fermatseq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitHypothesisFalse = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataError = 65;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and --timing to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermatseq::cli
