#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fhtp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnachievable = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;
inline constexpr int kExitGuard = 70;

/// Runs one subcommand. `args` excludes the program name. Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Value rounded to six significant digits, as printed in every result.
double round6(double x);

}  // namespace fhtp::cli
