#pragma once

#include <iosfwd>

namespace pfa {

/// Entry point of the `pfatool` command line. Returns 0 on success or a verified
/// claim, 1 when a check finds a counterexample or violation, 2 on usage, parse or
/// input errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pfa
