#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apspectra::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNotConverged = 3;

/// Runs one `apspectra <subcommand> ...` invocation. argv[0] is the program
/// name. Reports go to `out` unless --out is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apspectra::cli
