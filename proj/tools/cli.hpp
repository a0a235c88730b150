#ifndef HYPERLOG_TOOLS_CLI_HPP
#define HYPERLOG_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace hyperlog::cli
{

// Exit codes.
enum exit_code : int {
    ok = 0,
    failure = 1,
    parse_failure = 2,
    geometry_failure = 3,
    dependent = 10,
    grouplike_failure = 11,
};

// Runs the command line (args excludes the program name). Regular output goes
// to `out` unless --output names a file.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace hyperlog::cli

#endif
