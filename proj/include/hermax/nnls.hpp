#pragma once

#include <vector>

namespace hermax {

struct NnlsResult {
    std::vector<double> x;       // x >= 0
    double residual_norm = 0.0;  // ||A x - b||_2
    int iterations = 0;
};

/// Lawson–Hanson active-set nonnegative least squares:
/// min ||A x - b|| over x >= 0. `a` is row-major (rows x cols).
NnlsResult nnls(const std::vector<std::vector<double>>& a, const std::vector<double>& b);

/// Plain least squares / linear solve helper (Gaussian elimination with
/// partial pivoting on the normal equations). Exposed for the small dense
/// systems used elsewhere in the library.
std::vector<double> solve_normal_equations(const std::vector<std::vector<double>>& a,
                                           const std::vector<double>& b,
                                           const std::vector<int>& cols);

} // namespace hermax
