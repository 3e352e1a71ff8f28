#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccgram::cli {

/// Runs one CLI invocation. `args` excludes the program name.
/// Exit status: 0 yes/accept, 1 no/reject, 2 unknown or bound exhausted,
/// 10 usage/input errors, 11 internal inconsistencies.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccgram::cli
