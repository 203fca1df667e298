#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kaleido {

// Exit codes of the command line tool.
enum exit_code : int { exit_ok = 0, exit_usage = 1, exit_resource = 2, exit_verification = 3 };

// Runs the tool on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kaleido
