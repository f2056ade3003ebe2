#include "hermax/solver.hpp"

#include "hermax/nnls.hpp"
#include "hermax/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hermax {

ContainmentConfig SolveConfig::effective_containment() const {
    ContainmentConfig c = containment;
    c.contact_eps = contact_eps;
    c.seed = seed;
    return c;
}

void SolveConfig::validate() const {
    if (max_iters < 1) throw std::invalid_argument("solve config: max_iters must be >= 1");
    if (lp_stop_tol <= 0.0 || contact_eps <= 0.0 || step_init <= 0.0 || min_step <= 0.0)
        throw std::invalid_argument("solve config: tolerances must be positive");
    if (step_shrink <= 0.0 || step_shrink >= 1.0)
        throw std::invalid_argument("solve config: step_shrink must be in (0,1)");
    containment.validate();
}

DirectionResult direction_lp(const HPDForm& h, const CVec& center, const ContactSet& contacts,
                             SolveMode mode) {
    if (contacts.points.empty()) throw std::invalid_argument("direction_lp: no contact points");
    const int n = h.dim();
    const int nt = 2 * n * n;
    const int d = mode == SolveMode::Translate ? nt + 2 * n : nt;

    std::vector<double> c(static_cast<size_t>(d), 0.0);
    for (int k = 0; k < n; ++k) c[k * n + k] = 1.0; // Re tr T

    std::vector<std::vector<double>> rows;
    rows.reserve(contacts.points.size());
    for (const ContactPoint& p : contacts.points) {
        const CVec zc = vsub(p.z, center);
        const CVec u = h.matrix() * zc; // H (z - c)
        std::vector<double> row(static_cast<size_t>(d), 0.0);
        // Re h(Tz + a, z-c) = sum Re(G_jk) Re T_jk + Im(G_jk) Im T_jk + ...
        // with G_jk = (H(z-c))_j conj(z_k).
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const cdouble g = u[j] * std::conj(p.z[k]);
                row[j * n + k] = g.real();
                row[n * n + j * n + k] = g.imag();
            }
        if (mode == SolveMode::Translate)
            for (int k = 0; k < n; ++k) {
                row[nt + k] = u[k].real();
                row[nt + n + k] = u[k].imag();
            }
        rows.push_back(std::move(row));
    }

    const LpResult lp = solve_box_lp(rows, c);
    DirectionResult res;
    res.t = Mat(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            res.t(j, k) = cdouble(lp.t[j * n + k], lp.t[n * n + j * n + k]);
    res.a = zeros_vec(n);
    if (mode == SolveMode::Translate)
        for (int k = 0; k < n; ++k) res.a[k] = cdouble(lp.t[nt + k], lp.t[nt + n + k]);
    res.value = lp.value;
    res.duals = lp.duals;
    return res;
}

static Ellipsoid deform(const Ellipsoid& e, const Mat& t_dir, const CVec& a, double t) {
    const Mat x = expm((-t) * t_dir);
    HPDForm form(hermitize(adjoint(x) * e.form.matrix() * x));
    CVec cen = e.center;
    const bool centered_fixed = e.is_centered() && vnorm(a) == 0.0;
    if (!centered_fixed) {
        const Mat y = expm(t * t_dir);
        cen = vadd(y * e.center, vscale(t, a));
    }
    return Ellipsoid(std::move(form), std::move(cen));
}

StepResult step(const Ellipsoid& e, const Mat& t_dir, const CVec& a, const DomainSpec& d,
                const SolveConfig& cfg) {
    const ContainmentConfig cont = cfg.effective_containment();
    double t = cfg.step_init;
    while (t >= cfg.min_step) {
        Ellipsoid trial = deform(e, t_dir, a, t);
        if (inscribed(trial, d, cont).contained) return {std::move(trial), t, false};
        t *= cfg.step_shrink;
    }
    return {e, 0.0, true};
}

SolveReport solve(const DomainSpec& d, const Ellipsoid& seed, const SolveConfig& cfg) {
    cfg.validate();
    const int n = seed.dim();
    if (n != d.n) throw std::invalid_argument("solve: dimension mismatch");
    if (cfg.mode == SolveMode::Centered) {
        if (!seed.is_centered())
            throw std::invalid_argument("solve: centered mode requires a centered seed");
        if (rho(d, zeros_vec(n)) >= 0.0)
            throw std::invalid_argument("solve: centered mode requires 0 inside the domain");
    }
    ContainmentConfig cont = cfg.effective_containment();
    if (!inscribed(seed, d, cont).contained)
        throw std::invalid_argument("solve: seed ellipsoid is not inscribed");

    SolveReport rep(seed);
    rep.mode = cfg.mode;
    rep.local_only = cfg.mode == SolveMode::Translate;

    Ellipsoid e = seed;
    ContactSet contacts;
    rep.termination = Termination::MaxIters;
    bool boosted = false;

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        contacts = contact_points(e, d, cont);
        DirectionResult dir;
        if (contacts.points.empty()) {
            // Strictly interior: grow isotropically until the boundary is felt.
            dir.t = Mat::identity(n);
            dir.a = zeros_vec(n);
            dir.value = n;
        } else {
            dir = direction_lp(e.form, e.center, contacts, cfg.mode);
        }

        IterationRecord rec;
        rec.iter = iter;
        rec.volume = volume(e);
        rec.lp_value = dir.value;
        rec.contacts = static_cast<int>(contacts.points.size());

        if (dir.value <= cfg.lp_stop_tol) {
            rep.trace.push_back(rec);
            rep.termination = Termination::LpOptimal;
            break;
        }

        SolveConfig step_cfg = cfg;
        step_cfg.containment = cont;
        const StepResult st = step(e, dir.t, dir.a, d, step_cfg);
        if (st.stalled) {
            if (!boosted) {
                // One retry with a denser boundary survey: a stall with a
                // positive LP value usually means the contact manifold was
                // undersampled, so the LP saw directions that are actually
                // blocked.
                boosted = true;
                cont.sphere_samples *= 4;
                cont.ascent_starts = std::min(cont.ascent_starts * 2, 128);
                cont.max_contacts = std::min(cont.max_contacts * 2, 1024);
                rep.trace.push_back(rec);
                continue;
            }
            rep.trace.push_back(rec);
            rep.termination = Termination::StepStall;
            break;
        }
        e = st.ellipsoid;
        rec.step_size = st.t;
        rep.trace.push_back(rec);
    }

    rep.final_ellipsoid = e;
    if (!contacts.points.empty()) {
        if (cfg.mode == SolveMode::Centered) {
            auto [measure, crep] = fit_measure(e.form, contacts);
            rep.certificate = prune_support(measure);
            rep.cert_report = crep;
            rep.cert_report.matrix_residual = rep.certificate.size()
                                                  ? centered_residual(e.form, rep.certificate)
                                                  : crep.matrix_residual;
        } else {
            auto [measure, crep] = fit_measure_translate(e.form, e.center, contacts);
            rep.certificate = std::move(measure);
            rep.cert_report = crep;
        }
    } else {
        rep.cert_report.found = false;
        rep.cert_report.mode = mode_name(cfg.mode);
    }
    return rep;
}

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::LpOptimal: return "lp_optimal";
        case Termination::MaxIters: return "max_iters";
        case Termination::StepStall: return "step_stall";
    }
    return "?";
}

std::string mode_name(SolveMode m) {
    return m == SolveMode::Centered ? "centered" : "translate";
}

SolveMode mode_from_name(const std::string& s) {
    if (s == "centered") return SolveMode::Centered;
    if (s == "translate") return SolveMode::Translate;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

nlohmann::json solve_config_to_json(const SolveConfig& cfg) {
    return {{"mode", mode_name(cfg.mode)},
            {"max_iters", cfg.max_iters},
            {"lp_stop_tol", cfg.lp_stop_tol},
            {"contact_eps", cfg.contact_eps},
            {"step_init", cfg.step_init},
            {"step_shrink", cfg.step_shrink},
            {"min_step", cfg.min_step},
            {"seed", cfg.seed},
            {"containment", containment_config_to_json(cfg.containment)}};
}

SolveConfig solve_config_from_json(const nlohmann::json& j) {
    SolveConfig cfg;
    if (j.contains("mode")) cfg.mode = mode_from_name(j.at("mode").get<std::string>());
    if (j.contains("max_iters")) cfg.max_iters = j.at("max_iters").get<int>();
    if (j.contains("lp_stop_tol")) cfg.lp_stop_tol = j.at("lp_stop_tol").get<double>();
    if (j.contains("contact_eps")) cfg.contact_eps = j.at("contact_eps").get<double>();
    if (j.contains("step_init")) cfg.step_init = j.at("step_init").get<double>();
    if (j.contains("step_shrink")) cfg.step_shrink = j.at("step_shrink").get<double>();
    if (j.contains("min_step")) cfg.min_step = j.at("min_step").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("containment"))
        cfg.containment = containment_config_from_json(j.at("containment"));
    cfg.validate();
    return cfg;
}

nlohmann::json solve_report_to_json(const SolveReport& r) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& rec : r.trace)
        trace.push_back({{"iter", rec.iter},
                         {"volume", rec.volume},
                         {"lp_value", rec.lp_value},
                         {"step", rec.step_size},
                         {"contacts", rec.contacts}});
    return {{"final_ellipsoid", ellipsoid_to_json(r.final_ellipsoid)},
            {"trace", trace},
            {"termination", termination_name(r.termination)},
            {"certificate", measure_to_json(r.certificate)},
            {"certificate_report", certificate_report_to_json(r.cert_report)},
            {"mode", mode_name(r.mode)},
            {"local_only", r.local_only},
            {"final_volume", volume(r.final_ellipsoid)}};
}

std::string volume_trace_csv(const SolveReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "iter,volume,lp_value,step,contacts\n";
    for (const auto& rec : r.trace)
        os << rec.iter << "," << rec.volume << "," << rec.lp_value << "," << rec.step_size << ","
           << rec.contacts << "\n";
    return os.str();
}

} // namespace hermax
