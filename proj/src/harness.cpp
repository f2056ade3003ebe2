#include "hermax/harness.hpp"

#include "hermax/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace hermax {

ConvexityReport convexity_probe(const DomainSpec& d, const Ellipsoid& e0, const Ellipsoid& e1,
                                const std::vector<double>& grid, const ContainmentConfig& cfg) {
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        if (grid[i] >= grid[i + 1])
            throw std::invalid_argument("convexity_probe: grid must be strictly increasing");
    for (double t : grid)
        if (t < 0.0 || t > 1.0) throw std::invalid_argument("convexity_probe: grid outside [0,1]");
    if (!inscribed(e0, d, cfg).contained || !inscribed(e1, d, cfg).contained)
        throw std::invalid_argument("convexity_probe: endpoints must be inscribed");

    ConvexityReport rep;
    rep.grid = grid;
    rep.min_margin = 1e300;
    for (double t : grid) {
        const Ellipsoid et = geodesic_point(e0, e1, t);
        const InscribedResult r = inscribed(et, d, cfg);
        rep.margins.push_back(r.margin);
        if (r.margin < rep.min_margin) {
            rep.min_margin = r.margin;
            rep.witness = r.detail.argmax;
            rep.witness_t = t;
        }
    }
    return rep;
}

Ellipsoid random_inscribed_ellipsoid(const DomainSpec& d, uint64_t seed,
                                     const ContainmentConfig& cfg) {
    Rng rng(seed);
    const int n = d.n;
    // random unitary: modified Gram-Schmidt on a complex gaussian matrix
    Mat q(n);
    for (int attempt = 0; attempt < 16; ++attempt) {
        Mat g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = cdouble(rng.normal(), rng.normal());
        bool ok = true;
        for (int col = 0; col < n && ok; ++col) {
            CVec v(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) v[i] = g(i, col);
            for (int prev = 0; prev < col; ++prev) {
                CVec u(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) u[i] = q(i, prev);
                const cdouble proj = vdot(u, v);
                for (int i = 0; i < n; ++i) v[i] -= proj * u[i];
            }
            const double nv = vnorm(v);
            if (nv < 1e-8) {
                ok = false;
                break;
            }
            for (int i = 0; i < n; ++i) q(i, col) = v[i] / nv;
        }
        if (ok) break;
        if (attempt == 15) q = Mat::identity(n);
    }
    std::vector<double> eigs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        eigs[i] = std::exp(rng.uniform(std::log(0.1), std::log(1.0)));
    Mat h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cdouble s = 0.0;
            for (int k = 0; k < n; ++k) s += q(i, k) * eigs[k] * std::conj(q(j, k));
            h(i, j) = s;
        }
    h = hermitize(h);

    for (int halvings = 0; halvings < 64; ++halvings) {
        Ellipsoid e = Ellipsoid::centered(HPDForm(h));
        if (inscribed(e, d, cfg).contained) return e;
        h = 4.0 * h; // halve every radius
        h = hermitize(h);
    }
    throw std::runtime_error("random_inscribed_ellipsoid: rejection sampling failed");
}

double normalized_form_distance(const HPDForm& a, const HPDForm& b) {
    const double sa = std::pow(a.det(), 1.0 / a.dim());
    const double sb = std::pow(b.det(), 1.0 / b.dim());
    return fro_norm((1.0 / sa) * a.matrix() - (1.0 / sb) * b.matrix());
}

UniquenessReport uniqueness_probe(const DomainSpec& d, int n_seeds, const SolveConfig& cfg) {
    if (n_seeds < 2) throw std::invalid_argument("uniqueness_probe: need at least 2 seeds");
    UniquenessReport rep;
    for (int s = 0; s < n_seeds; ++s) {
        SolveConfig run_cfg = cfg;
        run_cfg.seed = cfg.seed + static_cast<uint64_t>(s);
        const Ellipsoid seed_e =
            random_inscribed_ellipsoid(d, run_cfg.seed * 977 + 13, run_cfg.effective_containment());
        SolveReport r = solve(d, seed_e, run_cfg);
        rep.volumes.push_back(volume(r.final_ellipsoid));
        rep.finals.push_back(std::move(r.final_ellipsoid));
    }

    const int m = static_cast<int>(rep.finals.size());
    rep.pairwise.assign(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(m), 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double dist = normalized_form_distance(rep.finals[i].form, rep.finals[j].form);
            rep.pairwise[i][j] = dist;
            rep.pairwise[j][i] = dist;
        }

    // single-linkage clusters at the threshold
    std::vector<int> parent(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (rep.pairwise[i][j] <= rep.cluster_threshold) parent[find(i)] = find(j);
    std::vector<int> roots;
    for (int i = 0; i < m; ++i) {
        const int r = find(i);
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    rep.cluster_count = static_cast<int>(roots.size());

    const double vmax = *std::max_element(rep.volumes.begin(), rep.volumes.end());
    const double vmin = *std::min_element(rep.volumes.begin(), rep.volumes.end());
    rep.volume_spread = vmax > 0.0 ? (vmax - vmin) / vmax : 0.0;
    return rep;
}

nlohmann::json convexity_report_to_json(const ConvexityReport& r) {
    return {{"grid", r.grid},
            {"margins", r.margins},
            {"min_margin", r.min_margin},
            {"witness", cvec_to_json(r.witness)},
            {"witness_t", r.witness_t}};
}

std::string convexity_report_to_csv(const ConvexityReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "t,margin\n";
    for (size_t i = 0; i < r.grid.size(); ++i) os << r.grid[i] << "," << r.margins[i] << "\n";
    return os.str();
}

nlohmann::json uniqueness_report_to_json(const UniquenessReport& r) {
    nlohmann::json finals = nlohmann::json::array();
    for (const auto& e : r.finals) finals.push_back(ellipsoid_to_json(e));
    return {{"finals", finals},
            {"volumes", r.volumes},
            {"pairwise", r.pairwise},
            {"cluster_count", r.cluster_count},
            {"volume_spread", r.volume_spread},
            {"cluster_threshold", r.cluster_threshold}};
}

} // namespace hermax
