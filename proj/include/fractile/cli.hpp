#pragma once

#include <iosfwd>

namespace fractile {

/// Exit codes: 0 ok, 1 negative verdict, 2 input error, 3 no result within the
/// resource bound, 4 internal error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fractile
