#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdutch::cli {

/// Exit codes: 0 success (including a reported Dutch book), 1 domain error
/// or failed verification, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdutch::cli
