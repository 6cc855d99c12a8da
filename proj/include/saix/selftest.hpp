#pragma once

#include <string>
#include <vector>

namespace saix {

struct FixtureResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestOptions {
    /// Negative control: pair each suffix with its successor instead of its
    /// predecessor when forming the LCP row. The lcp fixture must then fail.
    bool break_lcp_convention = false;
};

/// Checks the ATTGCTAC worked example (suffix array, sample ranks, final
/// ranks, LCP row), the split example on {001,100,111,101,110} and RMQ
/// engine agreement on seeded random arrays.
std::vector<FixtureResult> run_selftest(const SelftestOptions& options = {});

}  // namespace saix
