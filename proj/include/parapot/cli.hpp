#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parapot {

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::vector<std::string> split_tuple(const std::string& list);  // "a; b" -> {"a", "b"}

}  // namespace parapot
