#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prophet::cli {

/// Dispatches one command line (without argv[0]). Returns 0 on success,
/// 1 when a reproduced verdict or property suite fails, 2 on input or
/// usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prophet::cli
