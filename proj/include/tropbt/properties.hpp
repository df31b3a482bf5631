#pragma once

#include "theta.hpp"
#include "bitangent.hpp"

#include <random>
#include <string>
#include <vector>

// Random instances and the property suites run by `tropbt selftest`.
namespace tropbt {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// A vertex, an interior edge point at a random rational offset, or a point on a ray.
inline GraphPoint random_point(const MetricGraph& g, Rng& rng) {
    const int kinds = 2 + (g.rays.empty() ? 0 : 1);
    const int kind = uniform_int(rng, 0, kinds - 1);
    if (kind == 0 || g.edges.empty()) return GraphPoint::vertex(uniform_int(rng, 0, g.vertex_count - 1));
    if (kind == 1) {
        const int e = uniform_int(rng, 0, static_cast<int>(g.edges.size()) - 1);
        const int den = uniform_int(rng, 2, 7);
        return on_edge(g, e, Rational(g.edges[e].length * uniform_int(rng, 1, den - 1) / den));
    }
    const int r = uniform_int(rng, 0, static_cast<int>(g.rays.size()) - 1);
    return on_ray(g, r, rat(uniform_int(rng, 1, 9), uniform_int(rng, 1, 4)));
}

inline Divisor random_divisor(const MetricGraph& g, Rng& rng, int degree) {
    Divisor d;
    const int n = uniform_int(rng, 1, 4);
    std::int64_t sum = 0;
    for (int i = 0; i + 1 < n; ++i) {
        const int k = uniform_int(rng, -2, 3);
        d.add(random_point(g, rng), k);
        sum += k;
    }
    d.add(random_point(g, rng), degree - sum);
    return d;
}

// Line vertex drawn from a box around the curve's vertices, with small denominators.
inline TropicalLine random_line(const PlaneCurve& c, Rng& rng) {
    Rational lo_x = c.vertices[0].position.x, hi_x = lo_x, lo_y = c.vertices[0].position.y, hi_y = lo_y;
    for (const auto& v : c.vertices) {
        lo_x = std::min(lo_x, v.position.x);
        hi_x = std::max(hi_x, v.position.x);
        lo_y = std::min(lo_y, v.position.y);
        hi_y = std::max(hi_y, v.position.y);
    }
    auto coord = [&](const Rational& lo, const Rational& hi) {
        const int den = uniform_int(rng, 1, 6);
        const Rational span = hi - lo + 4;
        return Rational(lo - 2 + span * uniform_int(rng, 0, 60 * den) / (60 * den));
    };
    return {{coord(lo_x, hi_x), coord(lo_y, hi_y)}};
}

inline LatticePolygon random_lattice_polygon(Rng& rng, int box = 12) {
    for (;;) {
        std::vector<LatticePoint> pts;
        const int n = uniform_int(rng, 3, 9);
        for (int i = 0; i < n; ++i) pts.push_back({uniform_int(rng, -box, box), uniform_int(rng, -box, box)});
        if (convex_hull_points(pts).size() >= 3) return convex_hull(pts);
    }
}

struct SuiteResult {
    std::string name;
    int trials = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

// r(D) − r(K − D) = deg D − g + 1 for random D of degree −2..6.
inline SuiteResult riemann_roch_suite(const MetricGraph& g, Rng& rng, int trials) {
    SuiteResult res{"riemann_roch", trials, {}};
    const Reducer red(g, 0);
    const int genus = betti_number(g);
    const Divisor k = canonical_divisor(g);
    for (int t = 0; t < trials; ++t) {
        const Divisor d = random_divisor(g, rng, uniform_int(rng, -2, 6));
        const int lhs = red.rank(d) - red.rank(k - d);
        if (lhs != d.degree() - genus + 1)
            res.failures.push_back("trial " + std::to_string(t) + ": r(D) - r(K-D) = " + std::to_string(lhs));
    }
    return res;
}

// Stable intersection of a line with a degree-d curve has total multiplicity d.
inline SuiteResult bezout_suite(const PlaneCurve& c, Rng& rng, int trials) {
    SuiteResult res{"bezout", trials, {}};
    for (int t = 0; t < trials; ++t) {
        const auto line = random_line(c, rng);
        const std::int64_t total = section_divisor(stable_intersection(line, c)).degree();
        if (total != c.degree) res.failures.push_back("trial " + std::to_string(t) + ": total " + std::to_string(total));
    }
    return res;
}

inline SuiteResult canonical_section_suite(const CurveClassifier& cc, Rng& rng, int trials) {
    SuiteResult res{"canonical_section", trials, {}};
    for (int t = 0; t < trials; ++t)
        if (!canonical_section_check(random_line(cc.curve(), rng), cc)) res.failures.push_back("trial " + std::to_string(t));
    return res;
}

// Every Zharkov characteristic doubles to K, exactly one is not effective, and the table has the
// expected counting pattern.
inline SuiteResult theta_suite(const CurveClassifier& cc) {
    const auto& pg = cc.paired();
    SuiteResult res{"theta", 0, {}};
    const Reducer red(pg.sigma, 0);
    const Divisor k = canonical_divisor(pg.sigma);
    int non_effective = 0;
    for (const auto& cyc : cycle_space(pg.sigma)) {
        ++res.trials;
        const auto th = zharkov_theta(pg.sigma, cyc);
        if (!th.effective) ++non_effective;
        if (th.effective != th.divisor.is_effective()) res.failures.push_back("effectivity flag disagrees with divisor");
        if (!red.equivalent(th.divisor.scaled(2), k)) res.failures.push_back("2θ not equivalent to K");
    }
    if (non_effective != 1) res.failures.push_back(std::to_string(non_effective) + " non-effective characteristics");
    for (auto& v : table_violations(theta_class_table(cc), cc.jacobian_dimension(), betti_number(pg.sigma)))
        res.failures.push_back(std::move(v));
    return res;
}

// Pick's formula against the shoelace area.
inline SuiteResult pick_suite(Rng& rng, int trials) {
    SuiteResult res{"pick", trials, {}};
    for (int t = 0; t < trials; ++t) {
        const auto poly = random_lattice_polygon(rng);
        if (pick_area(poly) != shoelace_area(poly)) res.failures.push_back("trial " + std::to_string(t));
    }
    return res;
}

}  // namespace tropbt
