#pragma once

#include "curve.hpp"
#include "metgraph.hpp"

#include <map>
#include <string>
#include <vector>

namespace tropbt {

// Γ as an abstract metric graph: bounded curve edges become edges (lattice length),
// unbounded ones become rays, both in curve-edge order.
struct CurveGraph {
    MetricGraph graph;
    std::vector<int> index_of;  // curve edge -> metric edge id or ray id
    std::vector<int> edge_of_metric_edge;
    std::vector<int> edge_of_ray;
};

inline CurveGraph curve_graph(const PlaneCurve& c) {
    CurveGraph cg;
    cg.graph.vertex_count = static_cast<int>(c.vertices.size());
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        const auto& ed = c.edges[e];
        if (ed.bounded()) {
            cg.index_of.push_back(cg.graph.add_edge(ed.tail, ed.head, ed.length));
            cg.edge_of_metric_edge.push_back(static_cast<int>(e));
        } else {
            cg.index_of.push_back(cg.graph.add_ray(ed.tail, "e" + std::to_string(e)));
            cg.edge_of_ray.push_back(static_cast<int>(e));
        }
    }
    return cg;
}

// Γ-point at lattice offset s along curve edge e (measured from its tail).
inline GraphPoint curve_point(const PlaneCurve& c, const CurveGraph& cg, int e, const Rational& s) {
    return c.edges[e].bounded() ? on_edge(cg.graph, cg.index_of[e], s) : on_ray(cg.graph, cg.index_of[e], s);
}

inline Point2 plane_position(const PlaneCurve& c, const CurveGraph& cg, const GraphPoint& p) {
    switch (p.kind) {
    case GraphPoint::Kind::Vertex: return c.vertices[p.id].position;
    case GraphPoint::Kind::Edge: return c.point_on_edge(cg.edge_of_metric_edge[p.id], p.offset);
    case GraphPoint::Kind::Ray: return c.point_on_edge(cg.edge_of_ray[p.id], p.offset);
    default: throw Error(ErrorCode::InvalidArgument, "point at infinity has no plane position");
    }
}

struct PairedMetricGraph {
    struct EdgeImage {
        bool loop = false;
        int target = -1;  // Γ metric edge, or Γ vertex for a loop
        int copy = 0;     // index among the parallel copies / loops
    };

    MetricGraph sigma;
    Rational epsilon{1};
    std::vector<int> phi_vertex;
    std::vector<EdgeImage> phi_edge;
    std::vector<int> phi_ray;
    std::vector<std::vector<int>> copies_of_edge;  // Γ metric edge -> Σ edges
    std::vector<std::vector<int>> loops_at;        // Γ vertex -> Σ loops
};

inline PairedMetricGraph build_paired_graph(const PlaneCurve& c, const Rational& epsilon = Rational(1)) {
    if (sgn(epsilon) <= 0) throw Error(ErrorCode::InvalidArgument, "loop length must be positive");
    const CurveGraph cg = curve_graph(c);
    PairedMetricGraph pg;
    pg.epsilon = epsilon;
    pg.sigma.vertex_count = cg.graph.vertex_count;
    for (int v = 0; v < cg.graph.vertex_count; ++v) pg.phi_vertex.push_back(v);
    pg.copies_of_edge.resize(cg.graph.edges.size());
    pg.loops_at.resize(cg.graph.vertex_count);
    for (std::size_t e = 0; e < cg.graph.edges.size(); ++e) {
        const auto& ed = cg.graph.edges[e];
        const int w = c.edges[cg.edge_of_metric_edge[e]].weight;
        for (int k = 0; k < w; ++k) {
            pg.copies_of_edge[e].push_back(pg.sigma.add_edge(ed.u, ed.v, ed.length));
            pg.phi_edge.push_back({false, static_cast<int>(e), k});
        }
    }
    for (int v = 0; v < cg.graph.vertex_count; ++v)
        for (int k = 0; k < c.vertices[v].weight; ++k) {
            pg.loops_at[v].push_back(pg.sigma.add_edge(v, v, epsilon));
            pg.phi_edge.push_back({true, v, k});
        }
    for (std::size_t r = 0; r < cg.graph.rays.size(); ++r) {
        const int w = c.edges[cg.edge_of_ray[r]].weight;
        for (int k = 0; k < w; ++k) {
            pg.sigma.add_ray(cg.graph.rays[r].base, cg.graph.rays[r].label + "." + std::to_string(k));
            pg.phi_ray.push_back(static_cast<int>(r));
        }
    }
    return pg;
}

inline GraphPoint pushforward_point(const PairedMetricGraph& pg, const GraphPoint& p) {
    switch (p.kind) {
    case GraphPoint::Kind::Vertex: return GraphPoint::vertex(pg.phi_vertex[p.id]);
    case GraphPoint::Kind::Edge: {
        const auto& img = pg.phi_edge[p.id];
        if (img.loop) return GraphPoint::vertex(img.target);
        return {GraphPoint::Kind::Edge, img.target, p.offset};
    }
    case GraphPoint::Kind::Ray: return {GraphPoint::Kind::Ray, pg.phi_ray[p.id], p.offset};
    case GraphPoint::Kind::RayInfinity: return GraphPoint::ray_infinity(pg.phi_ray[p.id]);
    }
    return p;
}

inline Divisor pushforward(const PairedMetricGraph& pg, const Divisor& d) {
    Divisor out;
    for (const auto& [p, k] : d) out.add(pushforward_point(pg, p), k);
    return out;
}

struct RescaledGraph {
    MetricGraph graph;
    std::vector<int> edge_weight;  // per metric edge of Γ
    std::vector<int> ray_weight;

    GraphPoint to_rescaled(const GraphPoint& p) const {
        switch (p.kind) {
        case GraphPoint::Kind::Edge: return {p.kind, p.id, Rational(p.offset / edge_weight[p.id])};
        case GraphPoint::Kind::Ray: return {p.kind, p.id, Rational(p.offset / ray_weight[p.id])};
        default: return p;
        }
    }
    GraphPoint from_rescaled(const GraphPoint& p) const {
        switch (p.kind) {
        case GraphPoint::Kind::Edge: return {p.kind, p.id, Rational(p.offset * edge_weight[p.id])};
        case GraphPoint::Kind::Ray: return {p.kind, p.id, Rational(p.offset * ray_weight[p.id])};
        default: return p;
        }
    }
    Divisor to_rescaled(const Divisor& d) const {
        Divisor out;
        for (const auto& [p, k] : d) out.add(to_rescaled(p), k);
        return out;
    }
};

inline RescaledGraph rescaled_graph(const PlaneCurve& c) {
    const CurveGraph cg = curve_graph(c);
    RescaledGraph rg;
    rg.graph = cg.graph;
    for (std::size_t e = 0; e < rg.graph.edges.size(); ++e) {
        const int w = c.edges[cg.edge_of_metric_edge[e]].weight;
        rg.edge_weight.push_back(w);
        rg.graph.edges[e].length /= w;
    }
    for (std::size_t r = 0; r < rg.graph.rays.size(); ++r) rg.ray_weight.push_back(c.edges[cg.edge_of_ray[r]].weight);
    return rg;
}

struct CurveDivisorClass {
    ReducedForm reduced;  // on Γ^w

    friend bool operator==(const CurveDivisorClass& a, const CurveDivisorClass& b) { return a.reduced == b.reduced; }
    friend bool operator!=(const CurveDivisorClass& a, const CurveDivisorClass& b) { return !(a == b); }
    friend bool operator<(const CurveDivisorClass& a, const CurveDivisorClass& b) { return a.reduced < b.reduced; }
};

// Lexicographically first vertex by plane position.
inline int global_base(const PlaneCurve& c) {
    int best = 0;
    for (std::size_t v = 1; v < c.vertices.size(); ++v)
        if (c.vertices[v].position < c.vertices[best].position) best = static_cast<int>(v);
    return best;
}

// Class computations in Pic(Σ,Γ), carried out on Γ^w at a fixed base.
class CurveClassifier {
public:
    explicit CurveClassifier(const PlaneCurve& c, const Rational& epsilon = Rational(1))
        : curve_(c),
          cg_(curve_graph(c)),
          rg_(rescaled_graph(c)),
          pg_(build_paired_graph(c, epsilon)),
          reducer_(rg_.graph, global_base(c)) {}

    const PlaneCurve& curve() const { return curve_; }
    const CurveGraph& gamma() const { return cg_; }
    const RescaledGraph& rescaled() const { return rg_; }
    const PairedMetricGraph& paired() const { return pg_; }
    const Reducer& reducer() const { return reducer_; }

    CurveDivisorClass class_of(const Divisor& d) const { return {reducer_.reduce(rg_.to_rescaled(d))}; }

    // K_Γ = φ_*(K_Σ)
    Divisor canonical() const { return pushforward(pg_, canonical_divisor(pg_.sigma)); }

    int jacobian_dimension() const { return betti_number(rg_.graph); }

private:
    PlaneCurve curve_;
    CurveGraph cg_;
    RescaledGraph rg_;
    PairedMetricGraph pg_;
    Reducer reducer_;
};

inline CurveDivisorClass class_of(const PlaneCurve& c, const Divisor& d) { return CurveClassifier(c).class_of(d); }

inline int jacobian_dimension(const PlaneCurve& c) { return betti_number(rescaled_graph(c).graph); }

}  // namespace tropbt
