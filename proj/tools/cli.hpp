#pragma once

#include <iosfwd>

namespace nup {

/// Exit codes: 0 the command's success predicate holds, 1 verification
/// failure, 2 usage or parameter error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nup
