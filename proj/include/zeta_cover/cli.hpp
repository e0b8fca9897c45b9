#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zeta_cover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Runs `zeta-cover` with args[0] as the program name. Results go to `out` (or
/// the --out file); errors go to `err` as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zeta_cover::cli
