#pragma once

#include "hermax/complexmat.hpp"

#include "json.hpp"

namespace hermax {

inline constexpr int kMaxDim = 8;

/// Positive definite hermitian form h(z,w) = w^* H z (linear in the first
/// argument). The eigendecomposition is computed once at construction and
/// reused for volumes, square roots and fractional powers.
class HPDForm {
public:
    explicit HPDForm(Mat h);

    int dim() const { return h_.n(); }
    const Mat& matrix() const { return h_; }
    const EigDecomp& eig() const { return eig_; }

    double det() const;
    double min_eigenvalue() const { return eig_.values.front(); }
    /// H^t for real t (spectral).
    Mat power(double t) const;
    Mat sqrt_matrix() const { return power(0.5); }
    Mat inv_sqrt_matrix() const { return power(-0.5); }
    Mat inverse_matrix() const { return power(-1.0); }

private:
    Mat h_;
    EigDecomp eig_;
};

/// h(z,w) = w^* H z.
cdouble form_value(const Mat& h, const CVec& z, const CVec& w);

struct Ellipsoid {
    HPDForm form;
    CVec center;

    Ellipsoid(HPDForm f, CVec c);
    static Ellipsoid centered(HPDForm f);

    int dim() const { return form.dim(); }
    bool is_centered() const;
    /// h(z-c, z-c).
    double form_at(const CVec& z) const;
};

/// 2n-dimensional Lebesgue volume: pi^n / n! / det(H). Center-independent.
double volume(const Ellipsoid& e);

HPDForm frac_power(const HPDForm& h, double t);

/// The positive operator A with A E0 = E1 (centers must be 0):
/// A = H0^{-1/2} (H0^{-1/2} H1 H0^{-1/2})^{-1/2} H0^{1/2}.
/// Satisfies H0 A = A^* H0 and A^{-*} H0 A^{-1} = H1.
Mat transport_operator(const Ellipsoid& e0, const Ellipsoid& e1);

/// Point on the geodesic through E0, E1 in the space of centered ellipsoids:
/// H_t = H0^{1/2} (H0^{-1/2} H1 H0^{-1/2})^t H0^{1/2}. Endpoints are returned
/// exactly. t outside [0,1] requires allow_extrapolation.
Ellipsoid geodesic_point(const Ellipsoid& e0, const Ellipsoid& e1, double t,
                         bool allow_extrapolation = false);

struct GeodesicSpec {
    Ellipsoid start;
    Ellipsoid end;
    Mat transport;
};
GeodesicSpec make_geodesic(const Ellipsoid& e0, const Ellipsoid& e1);

// JSON wire format, field names fixed:
// {"n":2,"center":[[re,im],...],"H":[[[re,im],...],...]}
nlohmann::json ellipsoid_to_json(const Ellipsoid& e);
Ellipsoid ellipsoid_from_json(const nlohmann::json& j);
nlohmann::json cvec_to_json(const CVec& v);
CVec cvec_from_json(const nlohmann::json& j);
nlohmann::json mat_to_json(const Mat& m);
Mat mat_from_json(const nlohmann::json& j);

} // namespace hermax
