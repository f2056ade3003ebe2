#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hermax {

using cdouble = std::complex<double>;
using CVec = std::vector<cdouble>;

/// Dense square complex matrix, row-major. Everything here is sized for
/// small dimensions (the library caps forms at n <= 8), so all algorithms
/// are plain O(n^3) with no blocking.
class Mat {
public:
    Mat() = default;
    explicit Mat(int n) : n_(n), a_(static_cast<size_t>(n) * static_cast<size_t>(n)) {
        if (n < 0) throw std::invalid_argument("Mat: negative dimension");
    }
    static Mat identity(int n);

    int n() const { return n_; }
    bool empty() const { return n_ == 0; }

    cdouble& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cdouble& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

private:
    int n_ = 0;
    std::vector<cdouble> a_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(cdouble s, const Mat& a);
Mat operator*(double s, const Mat& a);
CVec operator*(const Mat& a, const CVec& x);

Mat adjoint(const Mat& a);
cdouble trace(const Mat& a);
double fro_norm(const Mat& a);
double max_abs(const Mat& a);
/// Max elementwise |A - A*|.
double hermiticity_defect(const Mat& a);
bool is_hermitian(const Mat& a, double tol = 1e-12);
/// (A + A*)/2 — projects onto the hermitian part.
Mat hermitize(const Mat& a);

// Vector helpers. vdot is conjugate-linear in the first argument: a^* b.
cdouble vdot(const CVec& a, const CVec& b);
double vnorm(const CVec& a);
CVec vadd(const CVec& a, const CVec& b);
CVec vsub(const CVec& a, const CVec& b);
CVec vscale(cdouble s, const CVec& a);
CVec zeros_vec(int n);
/// Rank-one product z w^*.
Mat outer(const CVec& z, const CVec& w);

struct EigDecomp {
    std::vector<double> values; // ascending
    Mat vectors;                // unitary, columns are eigenvectors
};

/// Eigendecomposition of a hermitian matrix by cyclic Jacobi sweeps
/// (fixed sweep order, off-diagonal Frobenius tolerance 1e-13).
/// Throws std::invalid_argument when the input is not hermitian.
EigDecomp eigh(const Mat& m);

/// Reassemble V diag(f(lambda)) V^*.
Mat assemble(const EigDecomp& e, const std::vector<double>& diag);

cdouble det(const Mat& a);
Mat inverse(const Mat& a);
/// Matrix exponential by scaling-and-squaring with a Taylor kernel.
Mat expm(const Mat& a);

} // namespace hermax
