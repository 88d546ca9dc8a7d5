#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualdefect::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInputError = 2;

// args excludes the program name.  Reports go to `out`, warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace dualdefect::cli
