#pragma once

// Command-line front end. run_cli takes the arguments after the program name
// and returns the process exit status:
//   0 success, 1 internal error, 2 configuration error, 3 out of regime.

#include <iosfwd>
#include <string>
#include <vector>

namespace qcl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRegime = 3;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcl::cli
