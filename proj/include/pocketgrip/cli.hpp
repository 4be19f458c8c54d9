#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pocketgrip::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Reads `-` inputs from
/// `in`, writes results to `out` unless --output names a file.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// "200g" / "0.2kg" / "0.2 kg" to kilograms. Throws std::invalid_argument.
double parse_mass(const std::string& text);

}  // namespace pocketgrip::cli
