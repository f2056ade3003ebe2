#pragma once

#include "hermax/certificate.hpp"
#include "hermax/containment.hpp"

namespace hermax {

enum class SolveMode { Centered, Translate };
enum class Termination { LpOptimal, MaxIters, StepStall };

struct SolveConfig {
    SolveMode mode = SolveMode::Centered;
    int max_iters = 200;
    double lp_stop_tol = 1e-6;
    double contact_eps = 1e-6; // copied into the containment config
    double step_init = 0.1;
    double step_shrink = 0.5;
    double min_step = 1e-10;
    ContainmentConfig containment;
    uint64_t seed = 0;

    /// Containment config actually used (contact_eps and seed folded in).
    ContainmentConfig effective_containment() const;
    void validate() const;
};

struct DirectionResult {
    Mat t;                     // ascent direction in operator space, |entries| <= 1
    CVec a;                    // center direction (translate mode; zero otherwise)
    double value = 0.0;        // LP optimum of Re tr T
    std::vector<double> duals; // one per contact point
};

/// Direction LP: maximize Re tr T over box-bounded T (and a, translate mode)
/// subject to Re h(T z_i + a, z_i - c) <= 0 at every contact point. At value
/// zero the duals are discrete certificate weights.
DirectionResult direction_lp(const HPDForm& h, const CVec& center, const ContactSet& contacts,
                             SolveMode mode);

struct StepResult {
    Ellipsoid ellipsoid;
    double t = 0.0;
    bool stalled = false;
};

/// Deform along (T, a): the form becomes e^{-tT*} H e^{-tT} and the center
/// e^{tT} c + t a, with t found by backtracking from step_init as the largest
/// tested value keeping the ellipsoid inscribed. Volume scales by
/// e^{2 t Re tr T}.
StepResult step(const Ellipsoid& e, const Mat& t_dir, const CVec& a, const DomainSpec& d,
                const SolveConfig& cfg);

struct IterationRecord {
    int iter = 0;
    double volume = 0.0;
    double lp_value = 0.0;
    double step_size = 0.0;
    int contacts = 0;
};

struct SolveReport {
    explicit SolveReport(Ellipsoid e) : final_ellipsoid(std::move(e)) {}

    Ellipsoid final_ellipsoid;
    std::vector<IterationRecord> trace;
    Termination termination = Termination::LpOptimal;
    ContactMeasure certificate;
    CertificateReport cert_report;
    SolveMode mode = SolveMode::Centered;
    bool local_only = false; // true exactly in translate mode
};

/// First-order volume ascent from an inscribed seed. Centered mode requires
/// center 0 and 0 inside the domain.
SolveReport solve(const DomainSpec& d, const Ellipsoid& seed, const SolveConfig& cfg);

std::string termination_name(Termination t);
std::string mode_name(SolveMode m);
SolveMode mode_from_name(const std::string& s);

nlohmann::json solve_config_to_json(const SolveConfig& cfg);
SolveConfig solve_config_from_json(const nlohmann::json& j);
nlohmann::json solve_report_to_json(const SolveReport& r);
std::string volume_trace_csv(const SolveReport& r);

} // namespace hermax
