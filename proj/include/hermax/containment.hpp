#pragma once

#include "hermax/domain.hpp"
#include "hermax/ellipsoid.hpp"

#include <cstdint>

namespace hermax {

struct ContainmentConfig {
    int sphere_samples = 4096;
    int ascent_starts = 32;
    int ascent_steps = 200;
    double contact_eps = 1e-6;
    double dedup_angle = 0.05; // radians, in w-coordinates
    uint64_t seed = 0;
    double inside_tol = 1e-9; // containment threshold on max rho
    int max_contacts = 256;

    void validate() const;
};

/// c + H^{-1/2} w for a unit w; lies on the ellipsoid boundary.
CVec boundary_point(const Ellipsoid& e, const CVec& w);

struct MaxRhoResult {
    double value = 0.0; // best found max of rho over the boundary (lower bound)
    CVec argmax;
    CVec w_argmax;
};

/// Low-discrepancy sphere sweep plus projected gradient ascent from the top
/// ascent_starts samples. Deterministic given the seed; the reported value is
/// a lower bound of the true maximum.
MaxRhoResult max_rho_on_ellipsoid(const Ellipsoid& e, const DomainSpec& d,
                                  const ContainmentConfig& cfg);

struct InscribedResult {
    bool contained = false;
    double margin = 0.0; // -max rho
    MaxRhoResult detail;
};

InscribedResult inscribed(const Ellipsoid& e, const DomainSpec& d, const ContainmentConfig& cfg);

struct ContactPoint {
    CVec w;             // unit direction in form coordinates
    CVec z;             // boundary point
    double rho;         // domain value at z
    double form_residual; // |h(z-c,z-c) - 1|
    int component;      // active defining component at z
};

struct ContactSet {
    std::vector<ContactPoint> points;
    double max_rho = 0.0;
};

/// Near-maximizers of rho on the ellipsoid boundary with rho >= -contact_eps,
/// deduplicated by angular distance in w-space. Empty when the ellipsoid is
/// strictly interior (margin > contact_eps). Throws when the ellipsoid pokes
/// out of the domain by more than contact_eps.
ContactSet contact_points(const Ellipsoid& e, const DomainSpec& d, const ContainmentConfig& cfg);

/// Unit sphere directions in C^n from a Halton sweep; for a fixed seed the
/// sequence for a larger count extends the smaller one (prefix property).
std::vector<CVec> sphere_directions(int n, int count, uint64_t seed);

nlohmann::json contact_set_to_json(const ContactSet& c);
std::string contact_set_to_csv(const ContactSet& c);

nlohmann::json containment_config_to_json(const ContainmentConfig& cfg);
ContainmentConfig containment_config_from_json(const nlohmann::json& j);

} // namespace hermax
