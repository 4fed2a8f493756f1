#pragma once

#include <string>
#include <vector>

namespace schrowave {

struct InvariantResult {
    std::string name;
    double tolerance = 0.0;
    double measured = 0.0;
    bool pass = false;
};

struct ValidationOptions {
    /// Test hook: flips the sign of one wrap entry in the central-difference
    /// check so the antisymmetry invariant must fail.
    bool corrupt_central_wrap = false;
};

struct ValidationReport {
    std::vector<InvariantResult> results;
    bool all_pass() const;
    std::string to_text() const;
};

/// Desk-scale run of every module's structural invariants.
ValidationReport validate_invariants(const ValidationOptions& opts = {});

}  // namespace schrowave
