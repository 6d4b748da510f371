#pragma once

// The hilbert command line: series, compute, verify, grid, search-max.

#include <iosfwd>
#include <string>
#include <vector>

namespace hilbert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

std::string version();

/// Runs one command line (args excludes the program name). Results go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilbert::cli
