#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rainbow::cli {

// Exit codes shared by every subcommand.
enum exit_code : int {
    ok = 0,
    verification_failed = 1,
    usage_error = 2,
    refused = 3,
};

// args excludes the program name. Diagnostics go to err, results to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rainbow::cli
