#pragma once

#include <iosfwd>

namespace sl2h::cli {

/// Runs one subcommand. Exit codes: 0 success, 2 invalid input or usage, 3 numerical convergence failure.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sl2h::cli
