#pragma once

#include <vector>

namespace tdu {

// Small dense two-phase simplex for the core LPs: a handful of variables,
// constraints added lazily by the cutting-plane loop in core_min_expectation.
// Bland's rule, so it cannot cycle on the degenerate cores additive
// capacities produce.

enum class LpSense { ge, le, eq };

struct LpConstraint {
    std::vector<double> coeffs;
    LpSense sense;
    double rhs;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status;
    std::vector<double> x;
    double value = 0.0;
};

/// Minimize c.x subject to the constraints and x >= 0.
LpResult solve_lp(const std::vector<double>& c, const std::vector<LpConstraint>& constraints);

} // namespace tdu
