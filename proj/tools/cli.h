#ifndef LATINHC_TOOLS_CLI_H_
#define LATINHC_TOOLS_CLI_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace latinhc::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // only with --strict
inline constexpr int kInputError = 2;
inline constexpr int kInternalError = 3;

// Runs one command line. `in` backs the `-` path; results go to `out`,
// diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace latinhc::cli

#endif  // LATINHC_TOOLS_CLI_H_
