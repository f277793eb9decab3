#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sharpyoung::cli {

// Exit status: 0 success, 2 validation error, 3 certificate failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_certificate = 3;

// args excludes the program name. Artifacts go to `out` (or --out files),
// errors as a JSON object to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "1e-1..1e-5" (one point per decade) or a comma-separated list.
std::vector<double> parse_eps_grid(const std::string& text);

}  // namespace sharpyoung::cli
