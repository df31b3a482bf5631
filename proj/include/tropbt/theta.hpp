#pragma once

#include "pairing.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <vector>

namespace tropbt {

struct CycleZ2 {
    std::vector<int> edges;  // sorted core edge ids

    CycleZ2 operator^(const CycleZ2& o) const {
        CycleZ2 out;
        std::set_symmetric_difference(edges.begin(), edges.end(), o.edges.begin(), o.edges.end(),
                                      std::back_inserter(out.edges));
        return out;
    }
    bool empty() const { return edges.empty(); }
    bool contains(int e) const { return std::binary_search(edges.begin(), edges.end(), e); }

    friend bool operator==(const CycleZ2& a, const CycleZ2& b) { return a.edges == b.edges; }
    friend bool operator<(const CycleZ2& a, const CycleZ2& b) { return a.edges < b.edges; }
};

inline bool is_cycle(const MetricGraph& g, const CycleZ2& c) {
    std::vector<int> deg(g.vertex_count, 0);
    for (int e : c.edges) {
        if (e < 0 || e >= static_cast<int>(g.edges.size())) return false;
        ++deg[g.edges[e].u];
        ++deg[g.edges[e].v];
    }
    return std::all_of(deg.begin(), deg.end(), [](int d) { return d % 2 == 0; });
}

// One cycle per non-tree edge of a breadth-first spanning tree.
inline std::vector<CycleZ2> fundamental_cycles(const MetricGraph& g) {
    const int n = g.vertex_count;
    auto inc = g.incidence();
    std::vector<int> parent_edge(n, -1), depth(n, -1);
    std::vector<char> tree(g.edges.size(), 0);
    std::deque<int> queue{0};
    depth[0] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int e : inc[v]) {
            int w = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
            if (depth[w] >= 0) continue;
            depth[w] = depth[v] + 1;
            parent_edge[w] = e;
            tree[e] = 1;
            queue.push_back(w);
        }
    }
    std::vector<CycleZ2> basis;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (tree[e]) continue;
        std::vector<int> es{static_cast<int>(e)};
        int a = g.edges[e].u, b = g.edges[e].v;
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            int pe = parent_edge[a];
            es.push_back(pe);
            a = g.edges[pe].u == a ? g.edges[pe].v : g.edges[pe].u;
        }
        std::sort(es.begin(), es.end());
        basis.push_back({es});
    }
    return basis;
}

// All 2^b1 elements, the i-th being the sum of the basis cycles selected by the bits of i.
inline std::vector<CycleZ2> cycle_space(const MetricGraph& g) {
    auto basis = fundamental_cycles(g);
    std::vector<CycleZ2> all(std::size_t{1} << basis.size());
    for (std::size_t i = 1; i < all.size(); ++i) {
        std::size_t low = 0;
        while (!((i >> low) & 1)) ++low;
        all[i] = all[i & (i - 1)] ^ basis[low];
    }
    return all;
}

struct ThetaCharacteristic {
    CycleZ2 cycle;
    Divisor divisor;
    bool effective = false;
};

inline ThetaCharacteristic zharkov_theta(const MetricGraph& g, const CycleZ2& sigma) {
    if (!is_cycle(g, sigma)) throw Error(ErrorCode::InvalidArgument, "edge set is not a cycle");
    ThetaCharacteristic th;
    th.cycle = sigma;
    if (sigma.empty()) {
        for (int v = 0; v < g.vertex_count; ++v) th.divisor.add(GraphPoint::vertex(v), -1);
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            th.divisor.add(on_edge(g, static_cast<int>(e), Rational(g.edges[e].length / 2)), 1);
        th.effective = false;
        return th;
    }
    std::vector<int> on_sigma(g.vertex_count, 0);  // σ-valence
    for (int e : sigma.edges) {
        ++on_sigma[g.edges[e].u];
        ++on_sigma[g.edges[e].v];
    }
    std::vector<int> sources;
    for (int v = 0; v < g.vertex_count; ++v)
        if (on_sigma[v] > 0) sources.push_back(v);
    const auto dist = core_distances(g, sources);
    std::vector<int> descending(g.vertex_count, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (sigma.contains(static_cast<int>(e))) continue;
        const auto& ed = g.edges[e];
        if (ed.u == ed.v) {
            th.divisor.add(on_edge(g, static_cast<int>(e), Rational(ed.length / 2)), 1);
            continue;
        }
        const Rational peak = distance_peak(g, dist, static_cast<int>(e));
        if (sgn(peak) == 0) ++descending[ed.u];
        else if (peak == ed.length) ++descending[ed.v];
        else th.divisor.add(on_edge(g, static_cast<int>(e), peak), 1);
    }
    for (int v = 0; v < g.vertex_count; ++v) {
        if (on_sigma[v] > 0) th.divisor.add(GraphPoint::vertex(v), on_sigma[v] / 2 - 1);
        else th.divisor.add(GraphPoint::vertex(v), descending[v] - 1);
    }
    th.effective = true;
    return th;
}

inline std::vector<CycleZ2> kernel_cycles(const PairedMetricGraph& pg) {
    std::vector<CycleZ2> out;
    for (const auto& copies : pg.copies_of_edge)
        for (std::size_t k = 1; k < copies.size(); ++k) {
            std::vector<int> es{copies[0], copies[k]};
            std::sort(es.begin(), es.end());
            out.push_back({es});
        }
    for (const auto& loops : pg.loops_at)
        for (int e : loops) out.push_back({{e}});
    return out;
}

struct ThetaClass {
    CurveDivisorClass cls;
    int multiplicity = 0;
    std::vector<CycleZ2> fiber;
};

struct ThetaClassTable {
    std::vector<ThetaClass> classes;

    int find(const CurveDivisorClass& c) const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i].cls == c) return static_cast<int>(i);
        return -1;
    }
};

inline ThetaClassTable theta_class_table(const CurveClassifier& cc) {
    const auto& pg = cc.paired();
    ThetaClassTable table;
    for (const auto& cycle : cycle_space(pg.sigma)) {
        auto th = zharkov_theta(pg.sigma, cycle);
        auto cls = cc.class_of(pushforward(pg, th.divisor));
        int i = table.find(cls);
        if (i < 0) {
            table.classes.push_back({cls, 0, {}});
            i = static_cast<int>(table.classes.size()) - 1;
        }
        table.classes[i].fiber.push_back(cycle);
        if (th.effective) ++table.classes[i].multiplicity;
    }
    return table;
}

inline ThetaClassTable theta_class_table(const PlaneCurve& c, const PairedMetricGraph& pg) {
    return theta_class_table(CurveClassifier(c, pg.epsilon));
}

// Problems with the counting pattern of a table; empty when it has 2^g classes of multiplicity
// 2^{gΣ−g}, except a single one with one less.
inline std::vector<std::string> table_violations(const ThetaClassTable& t, int g_gamma, int g_sigma) {
    std::vector<std::string> out;
    const int expected_classes = 1 << g_gamma;
    const int full = 1 << (g_sigma - g_gamma);
    if (static_cast<int>(t.classes.size()) != expected_classes)
        out.push_back("expected " + std::to_string(expected_classes) + " classes, found " +
                      std::to_string(t.classes.size()));
    int deficient = 0, total = 0;
    for (const auto& c : t.classes) {
        total += c.multiplicity;
        if (static_cast<int>(c.fiber.size()) != full) out.push_back("fiber of unexpected size");
        if (c.multiplicity == full - 1) ++deficient;
        else if (c.multiplicity != full) out.push_back("unexpected multiplicity " + std::to_string(c.multiplicity));
    }
    if (deficient != 1) out.push_back("expected exactly one class of multiplicity " + std::to_string(full - 1));
    if (total != (1 << g_sigma) - 1) out.push_back("multiplicities do not sum to " + std::to_string((1 << g_sigma) - 1));
    return out;
}

}  // namespace tropbt
