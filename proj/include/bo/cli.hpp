#pragma once

#include <iosfwd>

namespace bo::cli {

/// Exit codes: 0 success, 1 validation failure, 2 usage or parse error,
/// 3 domain invariant violated, 4 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bo::cli
