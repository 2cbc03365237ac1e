#pragma once

// Command-line front end: eval, mono, tsts, golden, path, trace.

#include <iosfwd>
#include <string>
#include <vector>

namespace matmono {

namespace exit_code {
inline constexpr int kClean = 0;
inline constexpr int kViolations = 1;
inline constexpr int kDomain = 2;
inline constexpr int kUsage = 64;
inline constexpr int kConfig = 65;
inline constexpr int kInternal = 70;
}  // namespace exit_code

/// `args` excludes the program name. Reports go to `out` (or the --out
/// file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matmono
