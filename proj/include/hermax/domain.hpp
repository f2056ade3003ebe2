#pragma once

#include "hermax/complexmat.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hermax {

/// Axis-aligned box over the 2n real coordinates (Re z0, Im z0, Re z1, ...).
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

enum class DomainTag { Ball, Polydisc, HyperbolaBox, Cassini, PlanarUnion, SublevelIntersection };

/// One monomial coeff * prod z_k^{zpow_k} * conj(z_k)^{zbarpow_k}.
struct PolyTerm {
    cdouble coeff;
    std::vector<int> zpow;
    std::vector<int> zbarpow;
};

struct PlanarDisc {
    cdouble center;
    double radius;
};

/// Bounded domain given by smooth defining components rho_j; the domain is
/// {max_j rho_j < 0} (PlanarUnion combines by min: union semantics).
struct DomainSpec {
    DomainTag tag = DomainTag::Ball;
    int n = 1;

    // Ball
    CVec ball_center;
    double ball_radius = 1.0;
    // Polydisc
    std::vector<double> radii;
    // HyperbolaBox: {|xy| < product_bound, |x|,|y| < box_bound} via squared components
    double product_bound = 1.0;
    double box_bound = 3.0;
    // Cassini: {|z-p||z+p| < lambda^2}, p = (1,0)
    double lambda = 1.0005;
    // PlanarUnion
    std::vector<PlanarDisc> discs;
    // SublevelIntersection
    std::vector<std::vector<PolyTerm>> components;
    double sublevel_radius = 0.0; // required enclosing radius for sublevel specs

    static DomainSpec ball(CVec center, double radius);
    static DomainSpec polydisc(std::vector<double> radii);
    static DomainSpec hyperbola_box(double product_bound, double box_bound);
    static DomainSpec cassini(double lambda);
    static DomainSpec planar_union(std::vector<PlanarDisc> discs);
    static DomainSpec sublevel_intersection(int n, std::vector<std::vector<PolyTerm>> components,
                                            double enclosing_radius);

    int component_count() const;
    bool combine_by_min() const { return tag == DomainTag::PlanarUnion; }
    /// Analytic enclosing radius R with Omega inside {|z| < R}.
    double enclosing_radius() const;
};

double rho_component(const DomainSpec& d, int j, const CVec& z);
/// max over components (min for PlanarUnion). Negative inside, positive outside.
double rho(const DomainSpec& d, const CVec& z);

struct ActiveComponent {
    int index;
    bool near_tie; // another component is within 1e-9 of the active one
};
ActiveComponent active_component(const DomainSpec& d, const CVec& z);

/// (d rho_j / d z_k)_k, treating conj(z) as an independent variable.
CVec wirtinger_grad(const DomainSpec& d, int j, const CVec& z);
/// Levi matrix L[k][l] = d^2 rho_j / (d z_k d conj(z_l)).
Mat levi_form(const DomainSpec& d, int j, const CVec& z);

struct ComponentLeviStat {
    int component = 0;
    long samples = 0;
    double min_eigenvalue = 0.0;
};

struct LeviReport {
    long samples = 0;
    double min_eigenvalue = 0.0;
    CVec argmin;
    int argmin_component = 0;
    std::vector<ComponentLeviStat> per_component;
    // Sampling only provides evidence; it cannot certify plurisubharmonicity.
    std::string warning;
};

LeviReport psh_sample_check(const DomainSpec& d, const Box& region, int count, uint64_t seed);

Box enclosing_box(const DomainSpec& d);

nlohmann::json domain_to_json(const DomainSpec& d);
DomainSpec domain_from_json(const nlohmann::json& j);

} // namespace hermax
