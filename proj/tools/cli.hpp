#pragma once

#include <iosfwd>

namespace saix::cli {

enum ExitCode : int {
    kOk = 0,
    kGeneric = 1,
    kMissingInput = 2,
    kBadInput = 3,
    kBadQuery = 4,
    kMismatch = 5,
};

/// Entry point shared by the saix binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace saix::cli
