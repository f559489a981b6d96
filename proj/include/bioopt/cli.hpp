#ifndef BIOOPT_CLI_HPP
#define BIOOPT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace bioopt {

/// Parses argv-style arguments (program name excluded), runs the requested
/// subcommand, and writes the output files. Returns the process exit code:
/// 0 success, 1 usage/config error, 2 runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bioopt

#endif  // BIOOPT_CLI_HPP
