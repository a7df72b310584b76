#pragma once

#include <string>
#include <vector>

namespace mirrorphase {

// One self-check: pass iff residual <= threshold.
struct CheckResult {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    // Test hook: added to the first check's residual to exercise the failure
    // path deterministically.
    double inject_perturbation = 0.0;
};

// Built-in oracle suites: analytic-vs-RK4, route equivalence, boundary and
// free-space limits, first-order convergence, optimal theta.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

}  // namespace mirrorphase
