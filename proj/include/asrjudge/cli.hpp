#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asrjudge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // usage, validation or parse error
inline constexpr int kExitIo = 2;       // unreadable input or unwritable output

/// Runs one subcommand. `args` excludes the program name. Results go to the
/// named files or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asrjudge::cli
