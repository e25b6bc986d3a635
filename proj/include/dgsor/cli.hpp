#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dgsor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `dgsolve` tool. args[0] is the program name.
/// Returns 0 on success/pass, 1 on fail or non-convergence, 2 on usage or
/// I/O errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dgsor::cli
