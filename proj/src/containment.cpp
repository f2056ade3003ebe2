#include "hermax/containment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hermax {

void ContainmentConfig::validate() const {
    if (sphere_samples < 1 || ascent_starts < 1 || ascent_steps < 1 || max_contacts < 1)
        throw std::invalid_argument("containment config: counts must be >= 1");
    if (contact_eps <= 0.0 || dedup_angle <= 0.0 || inside_tol <= 0.0)
        throw std::invalid_argument("containment config: tolerances must be positive");
}

CVec boundary_point(const Ellipsoid& e, const CVec& w) {
    return vadd(e.center, e.form.inv_sqrt_matrix() * w);
}

static double halton(uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

static constexpr int kPrimes[16] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

std::vector<CVec> sphere_directions(int n, int count, uint64_t seed) {
    const int dims = 2 * n;
    if (dims > 16) throw std::invalid_argument("sphere_directions: dimension too large");
    const uint64_t offset = 1 + (seed % 1000003) * 8191;
    std::vector<CVec> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const uint64_t idx = offset + static_cast<uint64_t>(i);
        std::vector<double> g(static_cast<size_t>(dims));
        for (int p = 0; p < dims; p += 2) {
            double u1 = halton(idx, kPrimes[p]);
            const double u2 = halton(idx, kPrimes[p + 1]);
            if (u1 < 1e-16) u1 = 1e-16;
            const double r = std::sqrt(-2.0 * std::log(u1));
            g[p] = r * std::cos(2.0 * M_PI * u2);
            g[p + 1] = r * std::sin(2.0 * M_PI * u2);
        }
        double norm = 0.0;
        for (double v : g) norm += v * v;
        norm = std::sqrt(norm);
        CVec w(static_cast<size_t>(n));
        if (norm < 1e-12) {
            w[0] = 1.0;
        } else {
            for (int k = 0; k < n; ++k) w[k] = cdouble(g[2 * k] / norm, g[2 * k + 1] / norm);
        }
        out.push_back(std::move(w));
    }
    return out;
}

namespace {

struct Candidate {
    CVec w;
    double rho;
    long order; // original discovery index, for deterministic tie-breaking
};

struct Survey {
    std::vector<Candidate> candidates;
    int best = 0;
};

double eval_rho(const DomainSpec& d, const Ellipsoid& e, const Mat& inv_sqrt, const CVec& w,
                CVec* z_out = nullptr) {
    CVec z = vadd(e.center, inv_sqrt * w);
    const double v = rho(d, z);
    if (z_out) *z_out = std::move(z);
    return v;
}

CVec normalize_dir(const CVec& w) {
    const double nrm = vnorm(w);
    if (nrm < 1e-300) throw std::invalid_argument("zero direction");
    return vscale(1.0 / nrm, w);
}

/// Projected gradient ascent of rho(boundary_point(w)) on the unit w-sphere.
/// The real gradient of rho(c + S w), packaged as a complex vector, is
/// 2 S conj(grad_z rho) for hermitian S.
std::pair<CVec, double> ascend(const DomainSpec& d, const Ellipsoid& e, const Mat& inv_sqrt,
                               CVec w, double value, int steps) {
    double step = 0.5;
    for (int it = 0; it < steps; ++it) {
        CVec z = vadd(e.center, inv_sqrt * w);
        CVec gz;
        try {
            gz = wirtinger_grad(d, active_component(d, z).index, z);
        } catch (const std::invalid_argument&) {
            break; // non-smooth point; keep the best value found so far
        }
        CVec g(gz.size());
        for (size_t k = 0; k < gz.size(); ++k) g[k] = std::conj(gz[k]);
        g = inv_sqrt * g;
        for (cdouble& v : g) v *= 2.0;
        // tangent projection on the real sphere S^{2n-1}
        const double radial = vdot(w, g).real();
        for (size_t k = 0; k < g.size(); ++k) g[k] -= radial * w[k];
        const double gnorm = vnorm(g);
        if (gnorm < 1e-15) break;
        bool accepted = false;
        while (step >= 1e-12) {
            CVec trial = w;
            for (size_t k = 0; k < w.size(); ++k) trial[k] += (step / gnorm) * g[k];
            trial = normalize_dir(trial);
            const double tv = eval_rho(d, e, inv_sqrt, trial);
            if (tv > value) {
                w = std::move(trial);
                value = tv;
                step = std::min(1.0, step * 1.5);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    return {std::move(w), value};
}

double angular_distance(const CVec& a, const CVec& b) {
    double dot = 0.0;
    for (size_t k = 0; k < a.size(); ++k)
        dot += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    dot = std::clamp(dot, -1.0, 1.0);
    return std::acos(dot);
}

Survey run_survey(const Ellipsoid& e, const DomainSpec& d, const ContainmentConfig& cfg) {
    cfg.validate();
    if (e.dim() != d.n) throw std::invalid_argument("containment: dimension mismatch");
    const Mat inv_sqrt = e.form.inv_sqrt_matrix();
    const std::vector<CVec> dirs = sphere_directions(e.dim(), cfg.sphere_samples, cfg.seed);

    Survey s;
    s.candidates.reserve(dirs.size() + static_cast<size_t>(cfg.ascent_starts));
    for (size_t i = 0; i < dirs.size(); ++i) {
        const double v = eval_rho(d, e, inv_sqrt, dirs[i]);
        s.candidates.push_back({dirs[i], v, static_cast<long>(i)});
    }

    // Ascent starts: greedy best-first with a minimum angular separation, so
    // several contact components get polished, not just the global ridge.
    std::vector<int> by_value(s.candidates.size());
    for (size_t i = 0; i < by_value.size(); ++i) by_value[i] = static_cast<int>(i);
    std::stable_sort(by_value.begin(), by_value.end(), [&](int a, int b) {
        if (s.candidates[a].rho != s.candidates[b].rho) return s.candidates[a].rho > s.candidates[b].rho;
        return s.candidates[a].order < s.candidates[b].order;
    });
    const double start_sep = 0.15;
    std::vector<int> starts;
    for (int idx : by_value) {
        if (static_cast<int>(starts.size()) >= cfg.ascent_starts) break;
        bool close = false;
        for (int kept : starts)
            if (angular_distance(s.candidates[kept].w, s.candidates[idx].w) < start_sep) {
                close = true;
                break;
            }
        if (!close) starts.push_back(idx);
    }

    long order = static_cast<long>(s.candidates.size());
    for (int idx : starts) {
        auto [w, v] = ascend(d, e, inv_sqrt, s.candidates[idx].w, s.candidates[idx].rho,
                             cfg.ascent_steps);
        s.candidates.push_back({std::move(w), v, order++});
    }

    s.best = 0;
    for (size_t i = 1; i < s.candidates.size(); ++i)
        if (s.candidates[i].rho > s.candidates[s.best].rho) s.best = static_cast<int>(i);
    return s;
}

} // namespace

MaxRhoResult max_rho_on_ellipsoid(const Ellipsoid& e, const DomainSpec& d,
                                  const ContainmentConfig& cfg) {
    const Survey s = run_survey(e, d, cfg);
    const Candidate& c = s.candidates[s.best];
    MaxRhoResult r;
    r.value = c.rho;
    r.w_argmax = c.w;
    r.argmax = boundary_point(e, c.w);
    return r;
}

InscribedResult inscribed(const Ellipsoid& e, const DomainSpec& d, const ContainmentConfig& cfg) {
    InscribedResult r;
    r.detail = max_rho_on_ellipsoid(e, d, cfg);
    r.contained = r.detail.value <= cfg.inside_tol;
    r.margin = -r.detail.value;
    return r;
}

ContactSet contact_points(const Ellipsoid& e, const DomainSpec& d, const ContainmentConfig& cfg) {
    const Survey s = run_survey(e, d, cfg);
    const double max_rho_found = s.candidates[s.best].rho;
    ContactSet set;
    set.max_rho = max_rho_found;
    if (max_rho_found > cfg.contact_eps)
        throw std::invalid_argument("contact_points: ellipsoid is not inscribed within contact_eps");
    if (-max_rho_found > cfg.contact_eps) return set; // strictly interior: no contacts

    std::vector<int> idx;
    for (size_t i = 0; i < s.candidates.size(); ++i)
        if (s.candidates[i].rho >= -cfg.contact_eps) idx.push_back(static_cast<int>(i));
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (s.candidates[a].rho != s.candidates[b].rho) return s.candidates[a].rho > s.candidates[b].rho;
        return s.candidates[a].order < s.candidates[b].order;
    });

    std::vector<int> kept;
    for (int i : idx) {
        if (static_cast<int>(kept.size()) >= cfg.max_contacts) break;
        bool dup = false;
        for (int k : kept)
            if (angular_distance(s.candidates[k].w, s.candidates[i].w) < cfg.dedup_angle) {
                dup = true;
                break;
            }
        if (!dup) kept.push_back(i);
    }

    for (int i : kept) {
        ContactPoint p;
        p.w = s.candidates[i].w;
        p.z = boundary_point(e, p.w);
        p.rho = s.candidates[i].rho;
        p.form_residual = std::abs(e.form_at(p.z) - 1.0);
        p.component = active_component(d, p.z).index;
        set.points.push_back(std::move(p));
    }
    return set;
}

nlohmann::json contact_set_to_json(const ContactSet& c) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : c.points)
        pts.push_back({{"z", cvec_to_json(p.z)},
                       {"w", cvec_to_json(p.w)},
                       {"rho", p.rho},
                       {"form_residual", p.form_residual},
                       {"component", p.component}});
    return {{"max_rho", c.max_rho}, {"points", pts}};
}

std::string contact_set_to_csv(const ContactSet& c) {
    std::ostringstream os;
    os.precision(17);
    const int n = c.points.empty() ? 0 : static_cast<int>(c.points.front().z.size());
    for (int k = 0; k < n; ++k) os << "re" << k << ",im" << k << ",";
    os << "rho,form_residual,component\n";
    for (const auto& p : c.points) {
        for (const cdouble& z : p.z) os << z.real() << "," << z.imag() << ",";
        os << p.rho << "," << p.form_residual << "," << p.component << "\n";
    }
    return os.str();
}

nlohmann::json containment_config_to_json(const ContainmentConfig& cfg) {
    return {{"sphere_samples", cfg.sphere_samples}, {"ascent_starts", cfg.ascent_starts},
            {"ascent_steps", cfg.ascent_steps},     {"contact_eps", cfg.contact_eps},
            {"dedup_angle", cfg.dedup_angle},       {"seed", cfg.seed},
            {"inside_tol", cfg.inside_tol},         {"max_contacts", cfg.max_contacts}};
}

ContainmentConfig containment_config_from_json(const nlohmann::json& j) {
    ContainmentConfig cfg;
    if (j.contains("sphere_samples")) cfg.sphere_samples = j.at("sphere_samples").get<int>();
    if (j.contains("ascent_starts")) cfg.ascent_starts = j.at("ascent_starts").get<int>();
    if (j.contains("ascent_steps")) cfg.ascent_steps = j.at("ascent_steps").get<int>();
    if (j.contains("contact_eps")) cfg.contact_eps = j.at("contact_eps").get<double>();
    if (j.contains("dedup_angle")) cfg.dedup_angle = j.at("dedup_angle").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("inside_tol")) cfg.inside_tol = j.at("inside_tol").get<double>();
    if (j.contains("max_contacts")) cfg.max_contacts = j.at("max_contacts").get<int>();
    cfg.validate();
    return cfg;
}

} // namespace hermax
