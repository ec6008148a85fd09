#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace eye2vec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitUsageError = 2;

// Runs one subcommand. `args` includes the program name. Data goes to `out`
// (or the --out target); diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace eye2vec::cli
