#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace keo::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or to the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace keo::cli
