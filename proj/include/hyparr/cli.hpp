#pragma once

#include <string>
#include <vector>

namespace hyparr {

/// Runs the command line tool. Exit status: 0 success, 2 input parse error,
/// 3 precondition violation.
int run_cli(const std::vector<std::string>& args);

}  // namespace hyparr
