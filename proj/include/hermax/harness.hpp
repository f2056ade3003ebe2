#pragma once

#include "hermax/solver.hpp"

namespace hermax {

struct ConvexityReport {
    std::vector<double> grid;    // strictly increasing inside [0,1]
    std::vector<double> margins; // inscribed margin at each grid point
    double min_margin = 0.0;
    CVec witness;            // boundary point of the worst violation
    double witness_t = 0.0;
};

/// Evaluates the inscribed margin of the geodesic interpolants between two
/// inscribed centered ellipsoids. Throws when an endpoint is not inscribed.
ConvexityReport convexity_probe(const DomainSpec& d, const Ellipsoid& e0, const Ellipsoid& e1,
                                const std::vector<double>& grid, const ContainmentConfig& cfg);

struct UniquenessReport {
    std::vector<Ellipsoid> finals;
    std::vector<double> volumes;
    std::vector<std::vector<double>> pairwise; // Frobenius distances of det-normalized forms
    int cluster_count = 0;
    double volume_spread = 0.0; // (max-min)/max over final volumes
    double cluster_threshold = 0.05;
};

/// Runs solve from n_seeds random inscribed seeds and clusters the final
/// forms (single linkage on det-normalized Frobenius distance).
UniquenessReport uniqueness_probe(const DomainSpec& d, int n_seeds, const SolveConfig& cfg);

/// Rejection sampling of a random inscribed centered ellipsoid: HPD form with
/// log-uniform eigenvalues in [0.1, 1] under a random unitary conjugation,
/// then halve the radii until inscribed.
Ellipsoid random_inscribed_ellipsoid(const DomainSpec& d, uint64_t seed,
                                     const ContainmentConfig& cfg);

/// Frobenius distance between forms scaled to determinant one.
double normalized_form_distance(const HPDForm& a, const HPDForm& b);

nlohmann::json convexity_report_to_json(const ConvexityReport& r);
std::string convexity_report_to_csv(const ConvexityReport& r);
nlohmann::json uniqueness_report_to_json(const UniquenessReport& r);

} // namespace hermax
