#pragma once

#include "bitangent.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tropbt {

struct AffineCoefficient {
    Rational constant;
    Rational slope;  // coefficient of the family parameter

    bool operator==(const AffineCoefficient& o) const { return constant == o.constant && slope == o.slope; }
};

struct PolynomialFamily {
    int degree = 0;
    std::string parameter = "h";
    std::map<LatticePoint, AffineCoefficient> terms;

    TropicalPolynomial at(const Rational& h) const {
        Lift lift;
        for (const auto& [p, c] : terms) lift.value[p] = c.constant + c.slope * h;
        return make_polynomial(degree, lift);
    }
};

// H_1(Σ; Z/2) basis indexed by the interior lattice points p of the Newton triangle: the cycle
// around p when p is a subdivision vertex, the bigon of the two parallel copies meeting at p when
// p lies inside a subdivision edge, and the loop attached for p when p lies inside a face.
inline std::vector<std::pair<LatticePoint, CycleZ2>> lattice_cycle_basis(const PlaneCurve& c, const PairedMetricGraph& pg) {
    const auto cg = curve_graph(c);
    const auto& sub = c.subdivision;
    std::vector<int> metric_of_interior(sub.interior_edges.size(), -1);
    for (std::size_t e = 0; e < c.edges.size(); ++e)
        if (c.edges[e].bounded()) metric_of_interior[c.edges[e].dual_edge] = cg.index_of[e];
    std::vector<std::pair<LatticePoint, CycleZ2>> basis;
    for (const auto& p : simplex_points(c.degree)) {
        if (p.x == 0 || p.y == 0 || p.x + p.y == c.degree) continue;
        CycleZ2 cyc;
        bool is_vertex = false;
        for (const auto& f : sub.faces)
            for (const auto& v : f.vertices()) is_vertex = is_vertex || v == p;
        if (is_vertex) {
            for (std::size_t k = 0; k < sub.interior_edges.size(); ++k) {
                const auto& ie = sub.interior_edges[k];
                if (ie.a != p && ie.b != p) continue;
                const auto& copies = pg.copies_of_edge[metric_of_interior[k]];
                cyc = cyc ^ CycleZ2{{ie.a == p ? copies.front() : copies.back()}};
            }
            basis.push_back({p, cyc});
            continue;
        }
        bool placed = false;
        for (std::size_t k = 0; k < sub.interior_edges.size() && !placed; ++k) {
            const auto& ie = sub.interior_edges[k];
            if (orient(ie.a, ie.b, p) != 0) continue;
            if ((p.x - ie.a.x) * (p.x - ie.b.x) + (p.y - ie.a.y) * (p.y - ie.b.y) >= 0) continue;
            const auto& copies = pg.copies_of_edge[metric_of_interior[k]];
            const std::int64_t step = lattice_length(ie.a, p);
            std::vector<int> es{copies[step - 1], copies[step]};
            std::sort(es.begin(), es.end());
            basis.push_back({p, {es}});
            placed = true;
        }
        if (placed) continue;
        for (std::size_t v = 0; v < c.vertices.size() && !placed; ++v) {
            const auto inner = interior_lattice_points(sub.faces[c.vertices[v].dual_face]);
            for (std::size_t k = 0; k < inner.size(); ++k)
                if (inner[k] == p) {
                    basis.push_back({p, {{pg.loops_at[v][k]}}});
                    placed = true;
                }
        }
        if (!placed) throw Error(ErrorCode::DegenerateGeometry, "interior lattice point not located in the subdivision");
    }
    return basis;
}

// Coordinates of a cycle in a basis, found by trying all combinations (the basis has g_Σ elements).
inline std::optional<std::vector<int>> cycle_coordinates(const CycleZ2& c,
                                                         const std::vector<std::pair<LatticePoint, CycleZ2>>& basis) {
    const std::size_t n = basis.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        CycleZ2 sum;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) sum = sum ^ basis[i].second;
        if (sum == c) {
            std::vector<int> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
            return x;
        }
    }
    return std::nullopt;
}

struct FamilySample {
    Rational value;
    PlaneCurve curve;
    ThetaClassTable table;
    BitangentEnumeration bitangents;
    MainTheoremReport verdict;
    int g = 0;
};

struct LimitMatch {
    struct Source {
        Rational value;
        std::vector<int> classes;  // table indices at that value
        int multiplicity_sum = 0;
    };
    int limit_class = -1;
    int limit_multiplicity = 0;
    std::vector<Source> sources;
};

struct FamilyReport {
    std::string parameter;
    std::vector<FamilySample> samples;  // in the order the values were given
    std::vector<LimitMatch> matches;    // one per class of the h = 0 member, when present
    bool passed = false;
    std::vector<std::string> failures;
};

namespace detail {

inline std::vector<LatticePolygon> sorted_faces(const PlaneCurve& c) {
    auto f = c.subdivision.faces;
    std::sort(f.begin(), f.end());
    return f;
}

}  // namespace detail

inline FamilyReport family_multiplicities(const PolynomialFamily& fam, const std::vector<Rational>& values,
                                          const Rational& epsilon = Rational(1)) {
    FamilyReport rep;
    rep.parameter = fam.parameter;
    if (values.empty()) throw Error(ErrorCode::InvalidArgument, "no parameter values");
    for (const auto& h : values)
        if (sgn(h) < 0) throw Error(ErrorCode::InvalidArgument, "parameter values must be non-negative");
    std::vector<std::unique_ptr<CurveClassifier>> classifiers;
    for (const auto& h : values) {
        FamilySample s;
        s.value = h;
        s.curve = curve_from_polynomial(fam.at(h));
        classifiers.push_back(std::make_unique<CurveClassifier>(s.curve, epsilon));
        const auto& cc = *classifiers.back();
        s.table = theta_class_table(cc);
        s.bitangents = enumerate_bitangents(cc, s.table, critical_arrangement(s.curve));
        s.verdict = verify_main_theorem(cc, s.table, s.bitangents);
        s.g = cc.jacobian_dimension();
        rep.samples.push_back(std::move(s));
    }
    int limit = -1;
    std::vector<int> positive;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (sgn(values[i]) == 0) limit = static_cast<int>(i);
        else positive.push_back(static_cast<int>(i));
    }
    for (std::size_t k = 1; k < positive.size(); ++k)
        if (detail::sorted_faces(rep.samples[positive[k]].curve) != detail::sorted_faces(rep.samples[positive[0]].curve))
            throw Error(ErrorCode::InvalidArgument, "family not constant-type");
    for (const auto& s : rep.samples)
        if (!s.verdict.passed) rep.failures.push_back("main theorem fails at " + fam.parameter + "=" + to_string(s.value));

    if (limit >= 0 && !positive.empty()) {
        const auto& lim = rep.samples[limit];
        const auto lim_faces = lim.curve.subdivision.faces;
        for (const auto& f : rep.samples[positive[0]].curve.subdivision.faces) {
            bool inside = std::any_of(lim_faces.begin(), lim_faces.end(), [&](const LatticePolygon& big) { return big.contains(f); });
            if (!inside) throw Error(ErrorCode::InvalidArgument, "limit member is not a contraction of the family");
        }
        const auto& lim_pg = classifiers[limit]->paired();
        const auto lim_basis = lattice_cycle_basis(lim.curve, lim_pg);
        auto limit_class_of = [&](const std::vector<int>& x) {
            CycleZ2 c;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i]) c = c ^ lim_basis[i].second;
            for (std::size_t j = 0; j < lim.table.classes.size(); ++j)
                for (const auto& f : lim.table.classes[j].fiber)
                    if (f == c) return static_cast<int>(j);
            return -1;
        };
        for (std::size_t j = 0; j < lim.table.classes.size(); ++j)
            rep.matches.push_back({static_cast<int>(j), lim.table.classes[j].multiplicity, {}});
        for (int k : positive) {
            const auto& s = rep.samples[k];
            const auto basis = lattice_cycle_basis(s.curve, classifiers[k]->paired());
            std::vector<LimitMatch::Source> per_limit(lim.table.classes.size());
            for (std::size_t i = 0; i < s.table.classes.size(); ++i) {
                int target = -2;
                for (const auto& cyc : s.table.classes[i].fiber) {
                    auto x = cycle_coordinates(cyc, basis);
                    int j = x ? limit_class_of(*x) : -1;
                    if (j < 0 || (target != -2 && target != j)) {
                        rep.failures.push_back("class " + std::to_string(i) + " at " + fam.parameter + "=" +
                                               to_string(s.value) + " has no consistent limit");
                        j = -1;
                    }
                    target = j;
                }
                if (target < 0) continue;
                per_limit[target].classes.push_back(static_cast<int>(i));
                per_limit[target].multiplicity_sum += s.table.classes[i].multiplicity;
            }
            for (std::size_t j = 0; j < per_limit.size(); ++j) {
                per_limit[j].value = s.value;
                rep.matches[j].sources.push_back(per_limit[j]);
                if (per_limit[j].multiplicity_sum != rep.matches[j].limit_multiplicity)
                    rep.failures.push_back("limit class " + std::to_string(j) + " has multiplicity " +
                                           std::to_string(rep.matches[j].limit_multiplicity) + " but receives " +
                                           std::to_string(per_limit[j].multiplicity_sum) + " from " + fam.parameter +
                                           "=" + to_string(s.value));
            }
        }
    }
    rep.passed = rep.failures.empty();
    return rep;
}

}  // namespace tropbt
