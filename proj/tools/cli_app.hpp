#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treeband::cli {

inline constexpr const char* kSchema = "treeband-cli/1";

// Exit codes: 0 success, 2 a "no"/reject decision, 1 any error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNo = 2;

// Runs one command. `input` stands in for standard input when a path is "-".
int run(const std::vector<std::string>& args, std::ostream& out, std::istream& input);

}  // namespace treeband::cli
