#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stratwave {

/// Exit codes: 0 success, 1 verification failure or runtime error,
/// 2 usage error or invalid configuration.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stratwave
