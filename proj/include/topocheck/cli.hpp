#ifndef TOPOCHECK_CLI_HPP
#define TOPOCHECK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace topocheck::cli {

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Exit code 0: the query was answered affirmatively
/// (forced / valid / model found / zero violations); 1: answered
/// negatively; 2: usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topocheck::cli

#endif  // TOPOCHECK_CLI_HPP
