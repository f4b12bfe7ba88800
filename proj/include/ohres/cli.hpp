#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ohres {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // infeasible plan or failed validation
inline constexpr int kExitUsage = 2;    // bad arguments or unreadable input

/// Runs the `ohres` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the bundled scenarios; OHRES_SEED_DIR overrides it.
std::filesystem::path seed_directory();

/// The path itself when it exists, otherwise the same name under
/// seed_directory() when that exists. Unresolvable names are returned as given.
std::filesystem::path resolve_scenario_path(const std::string& name);

}  // namespace ohres
