#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace huppert {

/// Runs one CLI invocation. `args` excludes the program name. Returns the
/// process exit code: 0 success, 1 verification failure, 2 usage or data
/// error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace huppert
