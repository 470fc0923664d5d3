#pragma once
#include <ostream>

namespace hc::cli {

/* Full command-line driver, stream-injected so tests can capture output.
   Exit codes: 0 ok, 2 parse, 3 invalid data, 4 degenerate level,
   5 theorem-check failure, 6 budget exceeded, 1 anything unforeseen. */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hc::cli
