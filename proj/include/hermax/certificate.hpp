#pragma once

#include "hermax/containment.hpp"
#include "hermax/ellipsoid.hpp"

#include <string>

namespace hermax {

/// Discrete nonnegative measure on boundary points.
struct ContactMeasure {
    std::vector<CVec> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(points.size()); }
    void validate() const;
};

/// || sum_i mu_i z_i z_i^*  -  H^{-1} ||_F, the matrix form of the centered
/// optimality identity (h(Tz,z) integrates to tr T for all T).
double centered_residual(const HPDForm& h, const ContactMeasure& m);

/// | sum_i mu_i h(T z_i, z_i) - tr T |.
double check_trace_identity(const HPDForm& h, const ContactMeasure& m, const Mat& t);

/// Translate-mode residuals: || sum_i mu_i (z_i - c) || and
/// || sum_i mu_i z_i (z_i - c)^* - H^{-1} ||_F.
std::pair<double, double> translate_residuals(const HPDForm& h, const CVec& c,
                                              const ContactMeasure& m);

struct CertificateReport {
    double matrix_residual = 0.0;
    double mass = 0.0;
    double mass_deviation = 0.0; // |mass - n|
    double trace_spot_max = 0.0; // max trace-identity error over seeded spot checks
    double vector_residual = 0.0;           // translate mode only
    double translate_matrix_residual = 0.0; // translate mode only
    bool found = false;
    std::string mode = "centered";
};

/// Nonnegative least squares fit of weights on the contact points minimizing
/// the centered matrix residual. found = (residual <= threshold).
std::pair<ContactMeasure, CertificateReport> fit_measure(const HPDForm& h, const ContactSet& contacts,
                                                         double threshold = 1e-4);

/// Same, for the translate-mode conditions (vector + matrix system stacked).
std::pair<ContactMeasure, CertificateReport> fit_measure_translate(const HPDForm& h, const CVec& c,
                                                                   const ContactSet& contacts,
                                                                   double threshold = 1e-4);

/// Caratheodory support reduction: keeps sum_i mu_i z_i z_i^* and the total
/// mass, support shrinks to at most 2n^2+1 points, weights stay >= 0.
ContactMeasure prune_support(const ContactMeasure& m);

nlohmann::json measure_to_json(const ContactMeasure& m);
ContactMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json certificate_report_to_json(const CertificateReport& r);

} // namespace hermax
