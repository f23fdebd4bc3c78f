#pragma once

#include <iosfwd>

namespace rocinf {

/// Entry point of the command-line tool; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rocinf
