#include "hermax/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hermax {

static std::vector<double> gauss_solve(std::vector<std::vector<double>> g, std::vector<double> rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
        if (std::abs(g[piv][col]) < 1e-300) throw std::runtime_error("gauss_solve: singular system");
        std::swap(g[piv], g[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = g[r][col] / g[col][col];
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) g[r][j] -= f * g[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[i] = rhs[i] / g[i][i];
    return x;
}

std::vector<double> solve_normal_equations(const std::vector<std::vector<double>>& a,
                                           const std::vector<double>& b,
                                           const std::vector<int>& cols) {
    const int rows = static_cast<int>(a.size());
    const int k = static_cast<int>(cols.size());
    std::vector<std::vector<double>> g(static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(k), 0.0));
    std::vector<double> rhs(static_cast<size_t>(k), 0.0);
    double diag_scale = 0.0;
    for (int p = 0; p < k; ++p) {
        for (int q = p; q < k; ++q) {
            double s = 0.0;
            for (int r = 0; r < rows; ++r) s += a[r][cols[p]] * a[r][cols[q]];
            g[p][q] = s;
            g[q][p] = s;
        }
        diag_scale = std::max(diag_scale, g[p][p]);
        double s = 0.0;
        for (int r = 0; r < rows; ++r) s += a[r][cols[p]] * b[r];
        rhs[p] = s;
    }
    // Tiny Tikhonov damping keeps nearly dependent column sets solvable; the
    // caller always re-evaluates the true residual afterwards.
    const double damp = 1e-13 * std::max(1.0, diag_scale);
    for (int p = 0; p < k; ++p) g[p][p] += damp;
    return gauss_solve(std::move(g), std::move(rhs));
}

NnlsResult nnls(const std::vector<std::vector<double>>& a, const std::vector<double>& b) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) throw std::invalid_argument("nnls: empty system");
    const int cols = static_cast<int>(a.front().size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("nnls: ragged matrix");
    if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("nnls: rhs size mismatch");

    std::vector<double> x(static_cast<size_t>(cols), 0.0);
    std::vector<bool> passive(static_cast<size_t>(cols), false);
    std::vector<int> pset;

    auto residual = [&](const std::vector<double>& xx) {
        std::vector<double> r(b);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r[i] -= a[i][j] * xx[j];
        return r;
    };

    double bnorm = 0.0;
    for (double v : b) bnorm = std::max(bnorm, std::abs(v));
    const double wtol = 1e-12 * std::max(1.0, bnorm);

    NnlsResult res;
    const int max_outer = 3 * cols + 16;
    for (int outer = 0; outer < max_outer; ++outer) {
        ++res.iterations;
        const std::vector<double> r = residual(x);
        int best = -1;
        double bestw = wtol;
        for (int j = 0; j < cols; ++j) {
            if (passive[j]) continue;
            double w = 0.0;
            for (int i = 0; i < rows; ++i) w += a[i][j] * r[i];
            if (w > bestw) {
                bestw = w;
                best = j;
            }
        }
        if (best < 0) break;
        passive[best] = true;
        pset.push_back(best);

        for (int inner = 0; inner < max_outer; ++inner) {
            std::vector<double> z = solve_normal_equations(a, b, pset);
            double zmin = 1e300;
            for (double v : z) zmin = std::min(zmin, v);
            if (zmin > 0.0) {
                for (double& v : x) v = 0.0;
                for (size_t p = 0; p < pset.size(); ++p) x[pset[p]] = z[p];
                break;
            }
            double alpha = 1e300;
            for (size_t p = 0; p < pset.size(); ++p)
                if (z[p] <= 0.0) {
                    const double xi = x[pset[p]];
                    alpha = std::min(alpha, xi / (xi - z[p]));
                }
            for (size_t p = 0; p < pset.size(); ++p)
                x[pset[p]] += alpha * (z[p] - x[pset[p]]);
            std::vector<int> next;
            for (int j : pset) {
                if (x[j] <= 1e-14) {
                    x[j] = 0.0;
                    passive[j] = false;
                } else {
                    next.push_back(j);
                }
            }
            pset = std::move(next);
            if (pset.empty()) break;
        }
    }

    const std::vector<double> r = residual(x);
    double s = 0.0;
    for (double v : r) s += v * v;
    res.residual_norm = std::sqrt(s);
    res.x = std::move(x);
    return res;
}

} // namespace hermax
