#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simerka::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a usage or domain error and 2 when a budget runs out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace simerka::cli
