#include "hermax/certificate.hpp"

#include "hermax/nnls.hpp"
#include "hermax/rng.hpp"

#include <algorithm>
#include <cmath>

namespace hermax {

void ContactMeasure::validate() const {
    if (points.size() != weights.size())
        throw std::invalid_argument("measure: points/weights size mismatch");
    for (double w : weights)
        if (!(w >= 0.0)) throw std::invalid_argument("measure: negative weight");
    for (const CVec& z : points)
        if (z.size() != points.front().size())
            throw std::invalid_argument("measure: inconsistent point dimensions");
}

static Mat moment_matrix(const ContactMeasure& m, int n) {
    Mat s(n);
    for (int i = 0; i < m.size(); ++i) {
        const CVec& z = m.points[i];
        const double w = m.weights[i];
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) s(r, c) += w * z[r] * std::conj(z[c]);
    }
    return s;
}

double centered_residual(const HPDForm& h, const ContactMeasure& m) {
    m.validate();
    return fro_norm(moment_matrix(m, h.dim()) - h.inverse_matrix());
}

double check_trace_identity(const HPDForm& h, const ContactMeasure& m, const Mat& t) {
    m.validate();
    cdouble s = 0.0;
    for (int i = 0; i < m.size(); ++i)
        s += m.weights[i] * form_value(h.matrix(), t * m.points[i], m.points[i]);
    return std::abs(s - trace(t));
}

std::pair<double, double> translate_residuals(const HPDForm& h, const CVec& c,
                                              const ContactMeasure& m) {
    m.validate();
    const int n = h.dim();
    CVec vres = zeros_vec(n);
    Mat mres(n);
    for (int i = 0; i < m.size(); ++i) {
        const CVec& z = m.points[i];
        const CVec zc = vsub(z, c);
        const double w = m.weights[i];
        for (int k = 0; k < n; ++k) vres[k] += w * zc[k];
        for (int r = 0; r < n; ++r)
            for (int q = 0; q < n; ++q) mres(r, q) += w * z[r] * std::conj(zc[q]);
    }
    return {vnorm(vres), fro_norm(mres - h.inverse_matrix())};
}

static double total_mass(const ContactMeasure& m) {
    double s = 0.0;
    for (double w : m.weights) s += w;
    return s;
}

static double trace_spot_checks(const HPDForm& h, const CVec& c, const ContactMeasure& m) {
    const int n = h.dim();
    Rng rng(12345);
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        Mat t(n);
        for (int r = 0; r < n; ++r)
            for (int q = 0; q < n; ++q) t(r, q) = cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1));
        cdouble s = 0.0;
        for (int i = 0; i < m.size(); ++i)
            s += m.weights[i] *
                 form_value(h.matrix(), t * m.points[i], vsub(m.points[i], c)).real();
        // compare real parts; the full complex identity is covered by the
        // matrix residual itself
        worst = std::max(worst, std::abs(s.real() - trace(t).real()));
    }
    return worst;
}

namespace {

// Stacked real rows of the centered moment map: Re of all entries of z z^*,
// then Im of all entries.
std::vector<double> pack_matrix(const Mat& m) {
    std::vector<double> v;
    v.reserve(static_cast<size_t>(2 * m.n() * m.n()));
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) v.push_back(m(i, j).real());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) v.push_back(m(i, j).imag());
    return v;
}

ContactMeasure measure_from_weights(const ContactSet& contacts, const std::vector<double>& w) {
    ContactMeasure m;
    for (size_t i = 0; i < contacts.points.size(); ++i) {
        if (w[i] > 1e-14) {
            m.points.push_back(contacts.points[i].z);
            m.weights.push_back(w[i]);
        }
    }
    return m;
}

} // namespace

std::pair<ContactMeasure, CertificateReport> fit_measure(const HPDForm& h, const ContactSet& contacts,
                                                         double threshold) {
    if (contacts.points.empty()) throw std::invalid_argument("fit_measure: no contact points");
    const int n = h.dim();
    const int cols = static_cast<int>(contacts.points.size());
    const int rows = 2 * n * n;
    std::vector<std::vector<double>> a(static_cast<size_t>(rows),
                                       std::vector<double>(static_cast<size_t>(cols), 0.0));
    for (int j = 0; j < cols; ++j) {
        const std::vector<double> col = pack_matrix(outer(contacts.points[j].z, contacts.points[j].z));
        for (int i = 0; i < rows; ++i) a[i][j] = col[i];
    }
    const std::vector<double> b = pack_matrix(h.inverse_matrix());
    const NnlsResult fit = nnls(a, b);

    ContactMeasure m = measure_from_weights(contacts, fit.x);
    CertificateReport rep;
    rep.mode = "centered";
    rep.matrix_residual = m.size() ? centered_residual(h, m) : fro_norm(h.inverse_matrix());
    rep.mass = total_mass(m);
    rep.mass_deviation = std::abs(rep.mass - n);
    rep.trace_spot_max = m.size() ? trace_spot_checks(h, zeros_vec(n), m) : 0.0;
    rep.found = rep.matrix_residual <= threshold;
    return {std::move(m), rep};
}

std::pair<ContactMeasure, CertificateReport> fit_measure_translate(const HPDForm& h, const CVec& c,
                                                                   const ContactSet& contacts,
                                                                   double threshold) {
    if (contacts.points.empty()) throw std::invalid_argument("fit_measure_translate: no contact points");
    const int n = h.dim();
    const int cols = static_cast<int>(contacts.points.size());
    const int rows = 2 * n * n + 2 * n;
    std::vector<std::vector<double>> a(static_cast<size_t>(rows),
                                       std::vector<double>(static_cast<size_t>(cols), 0.0));
    for (int j = 0; j < cols; ++j) {
        const CVec& z = contacts.points[j].z;
        const CVec zc = vsub(z, c);
        const std::vector<double> col = pack_matrix(outer(z, zc));
        for (int i = 0; i < 2 * n * n; ++i) a[i][j] = col[i];
        for (int k = 0; k < n; ++k) {
            a[2 * n * n + 2 * k][j] = zc[k].real();
            a[2 * n * n + 2 * k + 1][j] = zc[k].imag();
        }
    }
    std::vector<double> b = pack_matrix(h.inverse_matrix());
    b.resize(static_cast<size_t>(rows), 0.0);
    const NnlsResult fit = nnls(a, b);

    ContactMeasure m = measure_from_weights(contacts, fit.x);
    CertificateReport rep;
    rep.mode = "translate";
    if (m.size()) {
        const auto [vres, mres] = translate_residuals(h, c, m);
        rep.vector_residual = vres;
        rep.translate_matrix_residual = mres;
        rep.matrix_residual = mres;
        rep.trace_spot_max = trace_spot_checks(h, c, m);
    } else {
        rep.matrix_residual = rep.translate_matrix_residual = fro_norm(h.inverse_matrix());
    }
    rep.mass = total_mass(m);
    rep.mass_deviation = std::abs(rep.mass - n);
    rep.found = rep.translate_matrix_residual <= threshold && rep.vector_residual <= threshold;
    return {std::move(m), rep};
}

namespace {

// Null vector of the (rows x k) matrix whose columns are the moment vectors
// of the given support subset; k must exceed the matrix rank for one to
// exist (guaranteed when k = rows + 1).
std::vector<double> null_vector(std::vector<std::vector<double>> m, int k) {
    const int rows = static_cast<int>(m.size());
    std::vector<int> pivot_col_of_row(static_cast<size_t>(rows), -1);
    std::vector<bool> is_pivot(static_cast<size_t>(k), false);
    int r = 0;
    for (int col = 0; col < k && r < rows; ++col) {
        int piv = -1;
        double best = 1e-11;
        for (int i = r; i < rows; ++i)
            if (std::abs(m[i][col]) > best) {
                best = std::abs(m[i][col]);
                piv = i;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        const double p = m[r][col];
        for (int j = 0; j < k; ++j) m[r][j] /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = m[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j < k; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col_of_row[r] = col;
        is_pivot[col] = true;
        ++r;
    }
    int free_col = -1;
    for (int col = 0; col < k; ++col)
        if (!is_pivot[col]) {
            free_col = col;
            break;
        }
    if (free_col < 0) throw std::runtime_error("null_vector: no free column");
    std::vector<double> eta(static_cast<size_t>(k), 0.0);
    eta[free_col] = 1.0;
    for (int i = 0; i < rows; ++i)
        if (pivot_col_of_row[i] >= 0) eta[pivot_col_of_row[i]] = -m[i][free_col];
    return eta;
}

} // namespace

ContactMeasure prune_support(const ContactMeasure& input) {
    input.validate();
    ContactMeasure m;
    for (int i = 0; i < input.size(); ++i)
        if (input.weights[i] > 0.0) {
            m.points.push_back(input.points[i]);
            m.weights.push_back(input.weights[i]);
        }
    if (m.size() == 0) return m;
    const int n = static_cast<int>(m.points.front().size());
    const int bound = 2 * n * n + 1;
    const int rows = 2 * n * n + 1; // moment map entries + total mass

    while (m.size() > bound) {
        const int k = std::min(m.size(), rows + 1);
        std::vector<std::vector<double>> cols(static_cast<size_t>(rows),
                                              std::vector<double>(static_cast<size_t>(k), 0.0));
        for (int j = 0; j < k; ++j) {
            const std::vector<double> col = pack_matrix(outer(m.points[j], m.points[j]));
            for (int i = 0; i < rows - 1; ++i) cols[i][j] = col[i];
            cols[rows - 1][j] = 1.0;
        }
        const std::vector<double> eta = null_vector(std::move(cols), k);
        double sign = 0.0;
        for (double e : eta) sign = std::max(sign, e);
        const double flip = sign > 0.0 ? 1.0 : -1.0;
        double theta = 1e300;
        for (int j = 0; j < k; ++j) {
            const double ej = flip * eta[j];
            if (ej > 1e-14) theta = std::min(theta, m.weights[j] / ej);
        }
        ContactMeasure next;
        int zeroed = 0;
        for (int j = 0; j < m.size(); ++j) {
            double w = m.weights[j];
            if (j < k) w -= theta * flip * eta[j];
            if (w <= 1e-13) {
                ++zeroed;
                continue;
            }
            next.points.push_back(m.points[j]);
            next.weights.push_back(w);
        }
        if (zeroed == 0) break; // numerical dead end; keep current support
        m = std::move(next);
    }
    return m;
}

nlohmann::json measure_to_json(const ContactMeasure& m) {
    nlohmann::json pts = nlohmann::json::array();
    for (const CVec& z : m.points) pts.push_back(cvec_to_json(z));
    return {{"points", pts}, {"weights", m.weights}};
}

ContactMeasure measure_from_json(const nlohmann::json& j) {
    ContactMeasure m;
    for (const auto& p : j.at("points")) m.points.push_back(cvec_from_json(p));
    m.weights = j.at("weights").get<std::vector<double>>();
    m.validate();
    return m;
}

nlohmann::json certificate_report_to_json(const CertificateReport& r) {
    return {{"matrix_residual", r.matrix_residual},
            {"mass", r.mass},
            {"mass_deviation", r.mass_deviation},
            {"trace_spot_max", r.trace_spot_max},
            {"vector_residual", r.vector_residual},
            {"translate_matrix_residual", r.translate_matrix_residual},
            {"found", r.found},
            {"mode", r.mode}};
}

} // namespace hermax
