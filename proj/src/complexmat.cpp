#include "hermax/complexmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hermax {

Mat Mat::identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

static void require_same(const Mat& a, const Mat& b) {
    if (a.n() != b.n()) throw std::invalid_argument("Mat: dimension mismatch");
}

Mat operator+(const Mat& a, const Mat& b) {
    require_same(a, b);
    Mat r(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

Mat operator-(const Mat& a, const Mat& b) {
    require_same(a, b);
    Mat r(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

Mat operator*(const Mat& a, const Mat& b) {
    require_same(a, b);
    const int n = a.n();
    Mat r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cdouble aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Mat operator*(cdouble s, const Mat& a) {
    Mat r(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) r(i, j) = s * a(i, j);
    return r;
}

Mat operator*(double s, const Mat& a) { return cdouble(s, 0.0) * a; }

CVec operator*(const Mat& a, const CVec& x) {
    if (static_cast<int>(x.size()) != a.n()) throw std::invalid_argument("Mat*vec: dimension mismatch");
    CVec r(x.size(), 0.0);
    for (int i = 0; i < a.n(); ++i) {
        cdouble s = 0.0;
        for (int j = 0; j < a.n(); ++j) s += a(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

Mat adjoint(const Mat& a) {
    Mat r(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

cdouble trace(const Mat& a) {
    cdouble t = 0.0;
    for (int i = 0; i < a.n(); ++i) t += a(i, i);
    return t;
}

double fro_norm(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double max_abs(const Mat& a) {
    double m = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

double hermiticity_defect(const Mat& a) {
    double m = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

bool is_hermitian(const Mat& a, double tol) { return hermiticity_defect(a) <= tol; }

Mat hermitize(const Mat& a) {
    Mat r(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) r(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return r;
}

cdouble vdot(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vdot: size mismatch");
    cdouble s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

double vnorm(const CVec& a) {
    double s = 0.0;
    for (const cdouble& v : a) s += std::norm(v);
    return std::sqrt(s);
}

CVec vadd(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vadd: size mismatch");
    CVec r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

CVec vsub(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vsub: size mismatch");
    CVec r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

CVec vscale(cdouble s, const CVec& a) {
    CVec r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = s * a[k];
    return r;
}

CVec zeros_vec(int n) { return CVec(static_cast<size_t>(n), 0.0); }

Mat outer(const CVec& z, const CVec& w) {
    if (z.size() != w.size()) throw std::invalid_argument("outer: size mismatch");
    Mat r(static_cast<int>(z.size()));
    for (int i = 0; i < r.n(); ++i)
        for (int j = 0; j < r.n(); ++j) r(i, j) = z[i] * std::conj(w[j]);
    return r;
}

static double offdiag_norm(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

EigDecomp eigh(const Mat& m) {
    const int n = m.n();
    if (n == 0) throw std::invalid_argument("eigh: empty matrix");
    const double scale = std::max(1.0, max_abs(m));
    if (hermiticity_defect(m) > 1e-12 * scale)
        throw std::invalid_argument("eigh: matrix is not hermitian");

    Mat a = hermitize(m);
    Mat v = Mat::identity(n);
    const double tol = 1e-13 * std::max(1.0, fro_norm(a));

    for (int sweep = 0; sweep < 64 && offdiag_norm(a) > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double b = std::abs(apq);
                if (b <= 1e-300) continue;
                // Unitary 2x2 rotation annihilating a(p,q):
                //   R[p][p]=c, R[p][q]=s e^{i beta}, R[q][p]=-s e^{-i beta}, R[q][q]=c
                // with beta = arg(a(p,q)) and the classical symmetric Jacobi angle.
                const cdouble phase = apq / b; // e^{i beta}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cdouble spq = s * phase;        // R(p,q)
                const cdouble sqp = -s * std::conj(phase); // R(q,p)

                // A <- R^* A R applied in place on rows/cols p,q.
                for (int k = 0; k < n; ++k) {
                    const cdouble akp = a(k, p);
                    const cdouble akq = a(k, q);
                    a(k, p) = akp * c + akq * sqp;
                    a(k, q) = akp * spq + akq * c;
                }
                for (int k = 0; k < n; ++k) {
                    const cdouble apk = a(p, k);
                    const cdouble aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(sqp) * aqk;
                    a(q, k) = std::conj(spq) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cdouble(a(p, p).real(), 0.0);
                a(q, q) = cdouble(a(q, q).real(), 0.0);
                for (int k = 0; k < n; ++k) {
                    const cdouble vkp = v(k, p);
                    const cdouble vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * sqp;
                    v(k, q) = vkp * spq + vkq * c;
                }
            }
        }
    }

    EigDecomp e;
    e.values.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });

    e.vectors = Mat(n);
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        e.values[j] = diag[src];
        // Fix the phase so the entry of largest modulus is real positive.
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double m2 = std::abs(v(i, src));
            if (m2 > best + 1e-15) {
                best = m2;
                imax = i;
            }
        }
        cdouble ph = v(imax, src);
        ph = (std::abs(ph) > 0) ? ph / std::abs(ph) : cdouble(1.0, 0.0);
        for (int i = 0; i < n; ++i) e.vectors(i, j) = v(i, src) * std::conj(ph);
    }
    return e;
}

Mat assemble(const EigDecomp& e, const std::vector<double>& diag) {
    const int n = e.vectors.n();
    if (static_cast<int>(diag.size()) != n) throw std::invalid_argument("assemble: diag size mismatch");
    Mat r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cdouble s = 0.0;
            for (int k = 0; k < n; ++k) s += e.vectors(i, k) * diag[k] * std::conj(e.vectors(j, k));
            r(i, j) = s;
        }
    return hermitize(r);
}

cdouble det(const Mat& a) {
    const int n = a.n();
    Mat lu = a;
    cdouble d = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(lu(col, col));
        for (int r = col + 1; r < n; ++r)
            if (std::abs(lu(r, col)) > best) {
                best = std::abs(lu(r, col));
                piv = r;
            }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(lu(piv, j), lu(col, j));
            d = -d;
        }
        d *= lu(col, col);
        for (int r = col + 1; r < n; ++r) {
            const cdouble f = lu(r, col) / lu(col, col);
            for (int j = col; j < n; ++j) lu(r, j) -= f * lu(col, j);
        }
    }
    return d;
}

Mat inverse(const Mat& a) {
    const int n = a.n();
    Mat lu = a;
    Mat inv = Mat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(lu(col, col));
        for (int r = col + 1; r < n; ++r)
            if (std::abs(lu(r, col)) > best) {
                best = std::abs(lu(r, col));
                piv = r;
            }
        if (best == 0.0) throw std::invalid_argument("inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(lu(piv, j), lu(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const cdouble p = lu(col, col);
        for (int j = 0; j < n; ++j) {
            lu(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const cdouble f = lu(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                lu(r, j) -= f * lu(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Mat expm(const Mat& a) {
    const int n = a.n();
    double norm = fro_norm(a);
    int squarings = 0;
    Mat b = a;
    while (norm > 0.25) {
        b = 0.5 * b;
        norm *= 0.5;
        ++squarings;
        if (squarings > 64) throw std::invalid_argument("expm: norm too large");
    }
    Mat r = Mat::identity(n);
    Mat term = Mat::identity(n);
    for (int k = 1; k <= 24; ++k) {
        term = (1.0 / k) * (term * b);
        r = r + term;
        if (fro_norm(term) < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

} // namespace hermax
