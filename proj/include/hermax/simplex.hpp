#pragma once

#include <vector>

namespace hermax {

struct LpResult {
    std::vector<double> t;     // optimizer, |t_j| <= 1
    double value = 0.0;        // optimal objective
    std::vector<double> duals; // nonnegative multipliers of the A-rows
    int iterations = 0;
};

/// Maximize c.t subject to A_i . t <= 0 (one row per constraint) and
/// -1 <= t_j <= 1. Always feasible (t = 0) and bounded (box), so an optimum
/// exists. Dense tableau simplex on the split t = u - v; the duals are the
/// reduced costs of the constraint slacks at optimality.
LpResult solve_box_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& c);

} // namespace hermax
