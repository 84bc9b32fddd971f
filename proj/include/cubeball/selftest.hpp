#pragma once

#include <string>
#include <vector>

namespace cubeball {

struct SelftestCheck {
    std::string name;
    std::string status;  // "pass", "fail" or "unconfirmed"
    double measured = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct SelftestReport {
    std::vector<SelftestCheck> checks;
    std::string level;              // "quick" or "full"
    std::string laguerre_status;    // "pass" or "T1-unconfirmed"
    bool all_pass = false;          // unconfirmed does not fail the suite
    double elapsed_seconds = 0.0;
};

/// Cross-method consistency matrix and invariant checks. quick keeps the
/// runtime to a few seconds; full adds the Monte Carlo and lattice gates.
SelftestReport run_selftest(bool full);

}  // namespace cubeball
