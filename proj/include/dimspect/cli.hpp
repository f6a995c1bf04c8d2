#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimspect {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitRange = 4;

/// Runs one command. `args` excludes the program name. `in` serves
/// `--points -`. Errors are reported on `err` and mapped to the codes above.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

int run_cli(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dimspect
