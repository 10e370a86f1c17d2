#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smoothcount::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitCertification = 2;
inline constexpr int kExitWorkLimit = 3;
inline constexpr int kExitInput = 4;

/// Runs one command. `args` excludes the program name. Exactly one JSON
/// document goes to `out`; diagnostics go to `err`. Input is read from
/// `--input FILE`, or from `in` when the flag is absent or "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace smoothcount::cli
