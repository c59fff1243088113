#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace debias::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 1;
inline constexpr int kExitFailure = 2;

/// Parses "start:step:stop" (stop included when on the grid), a comma-separated
/// list, or a single number. Throws ParameterError.
std::vector<double> parse_sweep(std::string_view text);

/// Thread cap from DEBIAS_THREADS; 0 (machine parallelism) when unset.
unsigned threads_from_env();

/// Runs the command line and returns the process exit status. Results go to
/// the --out file (or `out` when absent); the one-line summary goes to `out`,
/// or to `err` when the results themselves were written to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace debias::cli
