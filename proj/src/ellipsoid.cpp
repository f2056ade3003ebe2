#include "hermax/ellipsoid.hpp"

#include <cmath>

namespace hermax {

HPDForm::HPDForm(Mat h) : h_(hermitize(h)) {
    if (h.n() < 1 || h.n() > kMaxDim)
        throw std::invalid_argument("HPDForm: dimension must be in [1, 8]");
    if (hermiticity_defect(h) > 1e-12 * std::max(1.0, max_abs(h)))
        throw std::invalid_argument("HPDForm: matrix is not hermitian");
    eig_ = eigh(h_);
    if (eig_.values.front() <= 0.0)
        throw std::invalid_argument("HPDForm: form is not positive definite");
}

double HPDForm::det() const {
    double d = 1.0;
    for (double v : eig_.values) d *= v;
    return d;
}

Mat HPDForm::power(double t) const {
    std::vector<double> d(eig_.values.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = std::pow(eig_.values[i], t);
    return assemble(eig_, d);
}

cdouble form_value(const Mat& h, const CVec& z, const CVec& w) {
    return vdot(w, h * z);
}

Ellipsoid::Ellipsoid(HPDForm f, CVec c) : form(std::move(f)), center(std::move(c)) {
    if (static_cast<int>(center.size()) != form.dim())
        throw std::invalid_argument("Ellipsoid: center dimension mismatch");
}

Ellipsoid Ellipsoid::centered(HPDForm f) {
    const int n = f.dim();
    return Ellipsoid(std::move(f), zeros_vec(n));
}

bool Ellipsoid::is_centered() const {
    for (const cdouble& c : center)
        if (c != 0.0) return false;
    return true;
}

double Ellipsoid::form_at(const CVec& z) const {
    const CVec d = vsub(z, center);
    return form_value(form.matrix(), d, d).real();
}

static double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double volume(const Ellipsoid& e) {
    const int n = e.dim();
    return std::pow(M_PI, n) / factorial(n) / e.form.det();
}

HPDForm frac_power(const HPDForm& h, double t) { return HPDForm(h.power(t)); }

static void require_centered_pair(const Ellipsoid& e0, const Ellipsoid& e1, const char* who) {
    if (e0.dim() != e1.dim()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    if (!e0.is_centered() || !e1.is_centered())
        throw std::invalid_argument(std::string(who) + ": both ellipsoids must be centered at 0");
}

Mat transport_operator(const Ellipsoid& e0, const Ellipsoid& e1) {
    require_centered_pair(e0, e1, "transport_operator");
    const Mat s0 = e0.form.sqrt_matrix();
    const Mat s0i = e0.form.inv_sqrt_matrix();
    const HPDForm mid(hermitize(s0i * e1.form.matrix() * s0i));
    return s0i * mid.power(-0.5) * s0;
}

Ellipsoid geodesic_point(const Ellipsoid& e0, const Ellipsoid& e1, double t,
                         bool allow_extrapolation) {
    require_centered_pair(e0, e1, "geodesic_point");
    if (!allow_extrapolation && (t < 0.0 || t > 1.0))
        throw std::invalid_argument("geodesic_point: t outside [0,1] needs the extrapolation flag");
    if (t == 0.0) return e0;
    if (t == 1.0) return e1;
    const Mat s0 = e0.form.sqrt_matrix();
    const Mat s0i = e0.form.inv_sqrt_matrix();
    const HPDForm mid(hermitize(s0i * e1.form.matrix() * s0i));
    return Ellipsoid::centered(HPDForm(hermitize(s0 * mid.power(t) * s0)));
}

GeodesicSpec make_geodesic(const Ellipsoid& e0, const Ellipsoid& e1) {
    return GeodesicSpec{e0, e1, transport_operator(e0, e1)};
}

nlohmann::json cvec_to_json(const CVec& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const cdouble& c : v) j.push_back({c.real(), c.imag()});
    return j;
}

CVec cvec_from_json(const nlohmann::json& j) {
    CVec v;
    for (const auto& e : j) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return v;
}

nlohmann::json mat_to_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const nlohmann::json& j) {
    const int n = static_cast<int>(j.size());
    Mat m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(j.at(i).size()) != n)
            throw std::invalid_argument("matrix json: not square");
        for (int k = 0; k < n; ++k)
            m(i, k) = cdouble(j.at(i).at(k).at(0).get<double>(), j.at(i).at(k).at(1).get<double>());
    }
    return m;
}

nlohmann::json ellipsoid_to_json(const Ellipsoid& e) {
    return {{"n", e.dim()}, {"center", cvec_to_json(e.center)}, {"H", mat_to_json(e.form.matrix())}};
}

Ellipsoid ellipsoid_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    Mat h = mat_from_json(j.at("H"));
    if (h.n() != n) throw std::invalid_argument("ellipsoid json: H dimension mismatch");
    CVec c = cvec_from_json(j.at("center"));
    if (static_cast<int>(c.size()) != n)
        throw std::invalid_argument("ellipsoid json: center dimension mismatch");
    return Ellipsoid(HPDForm(std::move(h)), std::move(c));
}

} // namespace hermax
