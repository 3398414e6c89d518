#ifndef DISKPACK_TOOLS_CLI_HPP
#define DISKPACK_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace diskpack::cli {

// Exit codes of the command-line tool.
constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kGeometryFailure = 2;

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diskpack::cli

#endif  // DISKPACK_TOOLS_CLI_HPP
