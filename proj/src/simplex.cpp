#include "hermax/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace hermax {

namespace {
constexpr double kEps = 1e-9;
}

LpResult solve_box_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& c) {
    const int d = static_cast<int>(c.size());
    const int m = static_cast<int>(a.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != d)
            throw std::invalid_argument("solve_box_lp: row width mismatch");

    // Standard-form tableau over x = (u, v) >= 0 with t = u - v:
    //   rows 0..m-1       : A(u - v) <= 0
    //   rows m..m+d-1     : u_j <= 1
    //   rows m+d..m+2d-1  : v_j <= 1
    const int ns = 2 * d;      // structural columns
    const int rows = m + 2 * d;
    const int cols = ns + rows + 1; // + slacks + rhs
    std::vector<std::vector<double>> t(static_cast<size_t>(rows + 1),
                                       std::vector<double>(static_cast<size_t>(cols), 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) {
            t[i][j] = a[i][j];
            t[i][d + j] = -a[i][j];
        }
    for (int j = 0; j < d; ++j) {
        t[m + j][j] = 1.0;
        t[m + j][cols - 1] = 1.0;
        t[m + d + j][d + j] = 1.0;
        t[m + d + j][cols - 1] = 1.0;
    }
    for (int i = 0; i < rows; ++i) t[i][ns + i] = 1.0;
    for (int j = 0; j < d; ++j) {
        t[rows][j] = -c[j];
        t[rows][d + j] = c[j];
    }

    std::vector<int> basis(static_cast<size_t>(rows));
    for (int i = 0; i < rows; ++i) basis[i] = ns + i;

    const int max_iters = 50000;
    const int bland_after = 4 * (rows + cols);
    int iter = 0;
    for (;; ++iter) {
        if (iter > max_iters) throw std::runtime_error("solve_box_lp: iteration limit");
        const bool bland = iter > bland_after;
        int enter = -1;
        double best = -kEps;
        for (int j = 0; j < ns + rows; ++j) {
            const double r = t[rows][j];
            if (r < -kEps) {
                if (bland) {
                    enter = j;
                    break;
                }
                if (r < best) {
                    best = r;
                    enter = j;
                }
            }
        }
        if (enter < 0) break; // optimal

        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < rows; ++i) {
            if (t[i][enter] <= kEps) continue;
            const double ratio = t[i][cols - 1] / t[i][enter];
            if (leave < 0 || ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) throw std::runtime_error("solve_box_lp: unbounded (box rows missing?)");

        // pivot
        const double piv = t[leave][enter];
        for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
        for (int i = 0; i <= rows; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    std::vector<double> x(static_cast<size_t>(ns), 0.0);
    for (int i = 0; i < rows; ++i)
        if (basis[i] < ns) x[basis[i]] = t[i][cols - 1];

    LpResult res;
    res.t.resize(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) res.t[j] = x[j] - x[d + j];
    res.value = t[rows][cols - 1];
    res.duals.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) res.duals[i] = std::max(0.0, t[rows][ns + i]);
    res.iterations = iter;
    return res;
}

} // namespace hermax
