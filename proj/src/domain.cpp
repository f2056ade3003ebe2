#include "hermax/domain.hpp"

#include "hermax/ellipsoid.hpp"
#include "hermax/rng.hpp"

#include <algorithm>
#include <cmath>

namespace hermax {

DomainSpec DomainSpec::ball(CVec center, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("ball: radius must be positive");
    DomainSpec d;
    d.tag = DomainTag::Ball;
    d.n = static_cast<int>(center.size());
    d.ball_center = std::move(center);
    d.ball_radius = radius;
    return d;
}

DomainSpec DomainSpec::polydisc(std::vector<double> radii) {
    for (double r : radii)
        if (r <= 0.0) throw std::invalid_argument("polydisc: radii must be positive");
    DomainSpec d;
    d.tag = DomainTag::Polydisc;
    d.n = static_cast<int>(radii.size());
    d.radii = std::move(radii);
    return d;
}

DomainSpec DomainSpec::hyperbola_box(double product_bound, double box_bound) {
    if (product_bound <= 0.0 || box_bound <= 0.0)
        throw std::invalid_argument("hyperbola_box: bounds must be positive");
    DomainSpec d;
    d.tag = DomainTag::HyperbolaBox;
    d.n = 2;
    d.product_bound = product_bound;
    d.box_bound = box_bound;
    return d;
}

DomainSpec DomainSpec::cassini(double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("cassini: lambda must be positive");
    DomainSpec d;
    d.tag = DomainTag::Cassini;
    d.n = 2;
    d.lambda = lambda;
    return d;
}

DomainSpec DomainSpec::planar_union(std::vector<PlanarDisc> discs) {
    if (discs.empty()) throw std::invalid_argument("planar_union: need at least one disc");
    for (const auto& disc : discs)
        if (disc.radius <= 0.0) throw std::invalid_argument("planar_union: radii must be positive");
    DomainSpec d;
    d.tag = DomainTag::PlanarUnion;
    d.n = 1;
    d.discs = std::move(discs);
    return d;
}

DomainSpec DomainSpec::sublevel_intersection(int n, std::vector<std::vector<PolyTerm>> components,
                                             double enclosing_radius) {
    if (components.empty()) throw std::invalid_argument("sublevel: need at least one component");
    if (enclosing_radius <= 0.0)
        throw std::invalid_argument("sublevel: enclosing radius must be positive");
    DomainSpec d;
    d.tag = DomainTag::SublevelIntersection;
    d.n = n;
    d.components = std::move(components);
    d.sublevel_radius = enclosing_radius;
    return d;
}

int DomainSpec::component_count() const {
    switch (tag) {
        case DomainTag::Ball: return 1;
        case DomainTag::Polydisc: return n;
        case DomainTag::HyperbolaBox: return 3;
        case DomainTag::Cassini: return 1;
        case DomainTag::PlanarUnion: return static_cast<int>(discs.size());
        case DomainTag::SublevelIntersection: return static_cast<int>(components.size());
    }
    return 0;
}

double DomainSpec::enclosing_radius() const {
    switch (tag) {
        case DomainTag::Ball: return vnorm(ball_center) + ball_radius;
        case DomainTag::Polydisc: {
            double s = 0.0;
            for (double r : radii) s += r * r;
            return std::sqrt(s);
        }
        case DomainTag::HyperbolaBox: return std::sqrt(2.0) * box_bound;
        case DomainTag::Cassini:
            // |x| < lambda+1 and |y| < lambda on the ovaloid.
            return std::sqrt((lambda + 1.0) * (lambda + 1.0) + lambda * lambda);
        case DomainTag::PlanarUnion: {
            double r = 0.0;
            for (const auto& disc : discs) r = std::max(r, std::abs(disc.center) + disc.radius);
            return r;
        }
        case DomainTag::SublevelIntersection: return sublevel_radius;
    }
    return 0.0;
}

static cdouble poly_eval(const std::vector<PolyTerm>& terms, const CVec& z) {
    cdouble s = 0.0;
    for (const PolyTerm& t : terms) {
        cdouble v = t.coeff;
        for (size_t k = 0; k < z.size(); ++k) {
            for (int a = 0; a < t.zpow[k]; ++a) v *= z[k];
            for (int b = 0; b < t.zbarpow[k]; ++b) v *= std::conj(z[k]);
        }
        s += v;
    }
    return s;
}

double rho_component(const DomainSpec& d, int j, const CVec& z) {
    if (static_cast<int>(z.size()) != d.n) throw std::invalid_argument("rho: dimension mismatch");
    if (j < 0 || j >= d.component_count()) throw std::invalid_argument("rho: bad component index");
    switch (d.tag) {
        case DomainTag::Ball: {
            const CVec w = vsub(z, d.ball_center);
            double s = 0.0;
            for (const cdouble& v : w) s += std::norm(v);
            return s - d.ball_radius * d.ball_radius;
        }
        case DomainTag::Polydisc:
            return std::norm(z[j]) - d.radii[j] * d.radii[j];
        case DomainTag::HyperbolaBox: {
            if (j == 0) return std::norm(z[0]) * std::norm(z[1]) - d.product_bound * d.product_bound;
            if (j == 1) return std::norm(z[0]) - d.box_bound * d.box_bound;
            return std::norm(z[1]) - d.box_bound * d.box_bound;
        }
        case DomainTag::Cassini: {
            const double m = std::norm(z[0] - 1.0) + std::norm(z[1]);
            const double p = std::norm(z[0] + 1.0) + std::norm(z[1]);
            const double l2 = d.lambda * d.lambda;
            return m * p - l2 * l2;
        }
        case DomainTag::PlanarUnion:
            return std::abs(z[0] - d.discs[j].center) - d.discs[j].radius;
        case DomainTag::SublevelIntersection:
            return poly_eval(d.components[j], z).real();
    }
    return 0.0;
}

double rho(const DomainSpec& d, const CVec& z) {
    const int m = d.component_count();
    double best = rho_component(d, 0, z);
    for (int j = 1; j < m; ++j) {
        const double v = rho_component(d, j, z);
        best = d.combine_by_min() ? std::min(best, v) : std::max(best, v);
    }
    return best;
}

ActiveComponent active_component(const DomainSpec& d, const CVec& z) {
    const int m = d.component_count();
    std::vector<double> vals(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) vals[j] = rho_component(d, j, z);
    int idx = 0;
    for (int j = 1; j < m; ++j) {
        const bool better = d.combine_by_min() ? (vals[j] < vals[idx]) : (vals[j] > vals[idx]);
        if (better) idx = j;
    }
    bool tie = false;
    for (int j = 0; j < m; ++j)
        if (j != idx && std::abs(vals[j] - vals[idx]) <= 1e-9) tie = true;
    return {idx, tie};
}

CVec wirtinger_grad(const DomainSpec& d, int j, const CVec& z) {
    if (static_cast<int>(z.size()) != d.n) throw std::invalid_argument("grad: dimension mismatch");
    if (j < 0 || j >= d.component_count()) throw std::invalid_argument("grad: bad component index");
    CVec g = zeros_vec(d.n);
    switch (d.tag) {
        case DomainTag::Ball:
            for (int k = 0; k < d.n; ++k) g[k] = std::conj(z[k] - d.ball_center[k]);
            return g;
        case DomainTag::Polydisc:
            g[j] = std::conj(z[j]);
            return g;
        case DomainTag::HyperbolaBox:
            if (j == 0) {
                g[0] = std::conj(z[0]) * std::norm(z[1]);
                g[1] = std::conj(z[1]) * std::norm(z[0]);
            } else if (j == 1) {
                g[0] = std::conj(z[0]);
            } else {
                g[1] = std::conj(z[1]);
            }
            return g;
        case DomainTag::Cassini: {
            const double s = std::norm(z[0]) + std::norm(z[1]);
            g[0] = 2.0 * std::conj(z[0]) * s - 2.0 * z[0];
            g[1] = 2.0 * std::conj(z[1]) * (s + 1.0);
            return g;
        }
        case DomainTag::PlanarUnion: {
            const cdouble w = z[0] - d.discs[j].center;
            const double r = std::abs(w);
            if (r < 1e-14)
                throw std::invalid_argument("planar_union: component not smooth at disc center");
            g[0] = std::conj(w) / (2.0 * r);
            return g;
        }
        case DomainTag::SublevelIntersection: {
            for (const PolyTerm& t : d.components[j]) {
                for (int k = 0; k < d.n; ++k) {
                    if (t.zpow[k] == 0) continue;
                    cdouble v = t.coeff * static_cast<double>(t.zpow[k]);
                    for (size_t m = 0; m < z.size(); ++m) {
                        const int zp = t.zpow[m] - (static_cast<int>(m) == k ? 1 : 0);
                        for (int a = 0; a < zp; ++a) v *= z[m];
                        for (int b = 0; b < t.zbarpow[m]; ++b) v *= std::conj(z[m]);
                    }
                    g[k] += v;
                }
            }
            return g;
        }
    }
    return g;
}

Mat levi_form(const DomainSpec& d, int j, const CVec& z) {
    if (static_cast<int>(z.size()) != d.n) throw std::invalid_argument("levi: dimension mismatch");
    if (j < 0 || j >= d.component_count()) throw std::invalid_argument("levi: bad component index");
    Mat l(d.n);
    switch (d.tag) {
        case DomainTag::Ball:
            return Mat::identity(d.n);
        case DomainTag::Polydisc:
            l(j, j) = 1.0;
            return l;
        case DomainTag::HyperbolaBox:
            if (j == 0) {
                l(0, 0) = std::norm(z[1]);
                l(0, 1) = std::conj(z[0]) * z[1];
                l(1, 0) = z[0] * std::conj(z[1]);
                l(1, 1) = std::norm(z[0]);
            } else if (j == 1) {
                l(0, 0) = 1.0;
            } else {
                l(1, 1) = 1.0;
            }
            return l;
        case DomainTag::Cassini: {
            const double ax = std::norm(z[0]);
            const double ay = std::norm(z[1]);
            l(0, 0) = 2.0 * (2.0 * ax + ay);
            l(0, 1) = 2.0 * std::conj(z[0]) * z[1];
            l(1, 0) = 2.0 * z[0] * std::conj(z[1]);
            l(1, 1) = 2.0 * (ax + 2.0 * ay + 1.0);
            return l;
        }
        case DomainTag::PlanarUnion: {
            const cdouble w = z[0] - d.discs[j].center;
            const double r = std::abs(w);
            if (r < 1e-14)
                throw std::invalid_argument("planar_union: component not smooth at disc center");
            l(0, 0) = 1.0 / (4.0 * r);
            return l;
        }
        case DomainTag::SublevelIntersection: {
            for (const PolyTerm& t : d.components[j]) {
                for (int k = 0; k < d.n; ++k) {
                    if (t.zpow[k] == 0) continue;
                    for (int q = 0; q < d.n; ++q) {
                        const int bq = t.zbarpow[q];
                        if (bq == 0) continue;
                        cdouble v = t.coeff * static_cast<double>(t.zpow[k]) * static_cast<double>(bq);
                        for (size_t m = 0; m < z.size(); ++m) {
                            const int zp = t.zpow[m] - (static_cast<int>(m) == k ? 1 : 0);
                            const int bp = t.zbarpow[m] - (static_cast<int>(m) == q ? 1 : 0);
                            for (int a = 0; a < zp; ++a) v *= z[m];
                            for (int b = 0; b < bp; ++b) v *= std::conj(z[m]);
                        }
                        l(k, q) += v;
                    }
                }
            }
            return l;
        }
    }
    return l;
}

Box enclosing_box(const DomainSpec& d) {
    const double r = d.enclosing_radius();
    Box b;
    b.lo.assign(static_cast<size_t>(2 * d.n), -r);
    b.hi.assign(static_cast<size_t>(2 * d.n), r);
    return b;
}

LeviReport psh_sample_check(const DomainSpec& d, const Box& region, int count, uint64_t seed) {
    if (count < 1) throw std::invalid_argument("psh_sample_check: count must be >= 1");
    if (static_cast<int>(region.lo.size()) != 2 * d.n || region.hi.size() != region.lo.size())
        throw std::invalid_argument("psh_sample_check: region dimension mismatch");
    Rng rng(seed);
    LeviReport rep;
    rep.samples = count;
    rep.min_eigenvalue = 1e300;
    rep.per_component.resize(static_cast<size_t>(d.component_count()));
    for (int j = 0; j < d.component_count(); ++j) {
        rep.per_component[j].component = j;
        rep.per_component[j].min_eigenvalue = 1e300;
    }
    for (int i = 0; i < count; ++i) {
        CVec z(static_cast<size_t>(d.n));
        for (int k = 0; k < d.n; ++k) {
            const double re = rng.uniform(region.lo[2 * k], region.hi[2 * k]);
            const double im = rng.uniform(region.lo[2 * k + 1], region.hi[2 * k + 1]);
            z[k] = cdouble(re, im);
        }
        const int j = active_component(d, z).index;
        Mat l;
        try {
            l = levi_form(d, j, z);
        } catch (const std::invalid_argument&) {
            continue; // sampled a non-smooth point (e.g. disc center)
        }
        const double lam = eigh(l).values.front();
        auto& stat = rep.per_component[j];
        ++stat.samples;
        stat.min_eigenvalue = std::min(stat.min_eigenvalue, lam);
        if (lam < rep.min_eigenvalue) {
            rep.min_eigenvalue = lam;
            rep.argmin = z;
            rep.argmin_component = j;
        }
    }
    if (d.tag == DomainTag::SublevelIntersection)
        rep.warning = "sampled Levi evidence only; pseudoconvexity is not certified";
    return rep;
}

static std::string tag_name(DomainTag t) {
    switch (t) {
        case DomainTag::Ball: return "ball";
        case DomainTag::Polydisc: return "polydisc";
        case DomainTag::HyperbolaBox: return "hyperbola-box";
        case DomainTag::Cassini: return "cassini";
        case DomainTag::PlanarUnion: return "planar-union";
        case DomainTag::SublevelIntersection: return "sublevel-intersection";
    }
    return "?";
}

nlohmann::json domain_to_json(const DomainSpec& d) {
    nlohmann::json j{{"tag", tag_name(d.tag)}};
    switch (d.tag) {
        case DomainTag::Ball:
            j["center"] = cvec_to_json(d.ball_center);
            j["radius"] = d.ball_radius;
            break;
        case DomainTag::Polydisc:
            j["radii"] = d.radii;
            break;
        case DomainTag::HyperbolaBox:
            j["product_bound"] = d.product_bound;
            j["box_bound"] = d.box_bound;
            break;
        case DomainTag::Cassini:
            j["lambda"] = d.lambda;
            break;
        case DomainTag::PlanarUnion: {
            nlohmann::json discs = nlohmann::json::array();
            for (const auto& disc : d.discs)
                discs.push_back({{"center", {disc.center.real(), disc.center.imag()}},
                                 {"radius", disc.radius}});
            j["discs"] = discs;
            break;
        }
        case DomainTag::SublevelIntersection: {
            j["n"] = d.n;
            j["enclosing_radius"] = d.sublevel_radius;
            nlohmann::json comps = nlohmann::json::array();
            for (const auto& comp : d.components) {
                nlohmann::json terms = nlohmann::json::array();
                for (const auto& t : comp)
                    terms.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}},
                                     {"a", t.zpow},
                                     {"b", t.zbarpow}});
                comps.push_back(terms);
            }
            j["components"] = comps;
            break;
        }
    }
    return j;
}

DomainSpec domain_from_json(const nlohmann::json& j) {
    const std::string tag = j.at("tag").get<std::string>();
    if (tag == "ball") {
        CVec c;
        for (const auto& e : j.at("center")) c.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        return DomainSpec::ball(std::move(c), j.at("radius").get<double>());
    }
    if (tag == "polydisc") return DomainSpec::polydisc(j.at("radii").get<std::vector<double>>());
    if (tag == "hyperbola-box")
        return DomainSpec::hyperbola_box(j.at("product_bound").get<double>(),
                                         j.at("box_bound").get<double>());
    if (tag == "cassini") return DomainSpec::cassini(j.at("lambda").get<double>());
    if (tag == "planar-union") {
        std::vector<PlanarDisc> discs;
        for (const auto& e : j.at("discs"))
            discs.push_back({cdouble(e.at("center").at(0).get<double>(),
                                     e.at("center").at(1).get<double>()),
                             e.at("radius").get<double>()});
        return DomainSpec::planar_union(std::move(discs));
    }
    if (tag == "sublevel-intersection") {
        const int n = j.at("n").get<int>();
        std::vector<std::vector<PolyTerm>> comps;
        for (const auto& comp : j.at("components")) {
            std::vector<PolyTerm> terms;
            for (const auto& t : comp) {
                PolyTerm pt;
                pt.coeff = cdouble(t.at("coeff").at(0).get<double>(), t.at("coeff").at(1).get<double>());
                pt.zpow = t.at("a").get<std::vector<int>>();
                pt.zbarpow = t.at("b").get<std::vector<int>>();
                if (static_cast<int>(pt.zpow.size()) != n || static_cast<int>(pt.zbarpow.size()) != n)
                    throw std::invalid_argument("sublevel json: multi-index dimension mismatch");
                terms.push_back(std::move(pt));
            }
            comps.push_back(std::move(terms));
        }
        return DomainSpec::sublevel_intersection(n, std::move(comps),
                                                 j.at("enclosing_radius").get<double>());
    }
    throw std::invalid_argument("domain json: unknown tag '" + tag + "'");
}

} // namespace hermax
