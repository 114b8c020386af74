#ifndef SIMPLEFRAC_TOOLS_CLI_HPP
#define SIMPLEFRAC_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace simplefrac::cli {

/// Exit codes.
enum Exit : int { Ok = 0, Failed = 1, Usage = 2, Uncertified = 3 };

/// Runs one invocation; args excludes the program name. Reports go to `out`,
/// error messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace simplefrac::cli

#endif
