#pragma once

#include "lattice.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace tropbt {

struct TropicalPolynomial {
    int degree = 0;
    Lift terms;

    bool operator==(const TropicalPolynomial& o) const { return degree == o.degree && terms == o.terms; }
};

inline std::vector<LatticePoint> simplex_points(int d) {
    std::vector<LatticePoint> pts;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) pts.push_back({i, j});
    return pts;
}

inline bool in_simplex(const LatticePoint& p, int d) { return p.x >= 0 && p.y >= 0 && p.x + p.y <= d; }

// Validates support and degree.
inline TropicalPolynomial make_polynomial(int degree, Lift terms) {
    if (degree <= 0) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
    for (const auto& [p, c] : terms.value)
        if (!in_simplex(p, degree))
            throw Error(ErrorCode::TermOutsideTriangle, "term outside the degree triangle");
    auto hull = convex_hull_points(terms.support());
    std::vector<LatticePoint> corners{{0, 0}, {degree, 0}, {0, degree}};
    if (hull != corners) throw Error(ErrorCode::NotOfDeclaredDegree, "not of declared degree");
    return {degree, std::move(terms)};
}

struct CurveVertex {
    Point2 position;
    int weight = 0;
    int dual_face = -1;
};

struct CurveEdge {
    int tail = -1;
    int head = -1;  // -1 for an unbounded ray leaving tail
    Direction direction;  // primitive, pointing from tail
    int weight = 1;
    Rational length;  // lattice length; meaningless for rays
    int dual_edge = -1;  // index into interior_edges (bounded) or boundary_edges (rays)

    bool bounded() const { return head >= 0; }
};

struct PlaneCurve {
    int degree = 0;
    std::vector<CurveVertex> vertices;
    std::vector<CurveEdge> edges;
    RegularSubdivision subdivision;

    // Outgoing primitive direction of edge e at vertex v.
    Direction outgoing(int e, int v) const {
        const auto& ed = edges[e];
        return ed.tail == v ? ed.direction : -ed.direction;
    }

    Point2 point_on_edge(int e, const Rational& s) const {
        return offset_point(vertices[edges[e].tail].position, edges[e].direction, s);
    }
};

inline PlaneCurve curve_from_polynomial(const TropicalPolynomial& p) {
    auto checked = make_polynomial(p.degree, p.terms);
    PlaneCurve c;
    c.degree = p.degree;
    c.subdivision = regular_subdivision(checked.terms);
    const auto& sub = c.subdivision;
    for (std::size_t f = 0; f < sub.faces.size(); ++f) {
        CurveVertex v;
        // min over terms of c + i·x + j·y ties on the face exactly where x = -c1, y = -c2
        v.position = {Rational(-sub.planes[f].c1), Rational(-sub.planes[f].c2)};
        v.weight = static_cast<int>(interior_lattice_points(sub.faces[f]).size());
        v.dual_face = static_cast<int>(f);
        c.vertices.push_back(v);
    }
    for (std::size_t k = 0; k < sub.interior_edges.size(); ++k) {
        const auto& ie = sub.interior_edges[k];
        CurveEdge e;
        e.tail = ie.left_face;
        e.head = ie.right_face;
        e.weight = static_cast<int>(lattice_length(ie.a, ie.b));
        // points from the face on the left of a->b towards the face on its right
        e.direction = primitive(-(ie.b.y - ie.a.y), ie.b.x - ie.a.x);
        const auto& p = c.vertices[e.tail].position;
        const auto& q = c.vertices[e.head].position;
        e.length = param_along(p, e.direction, q);
        if (sgn(e.length) <= 0 || offset_point(p, e.direction, e.length) != q)
            throw Error(ErrorCode::DegenerateGeometry, "dual edge is not perpendicular to its subdivision edge");
        e.dual_edge = static_cast<int>(k);
        c.edges.push_back(e);
    }
    for (std::size_t k = 0; k < sub.boundary_edges.size(); ++k) {
        const auto& be = sub.boundary_edges[k];
        CurveEdge e;
        e.tail = be.face;
        e.weight = static_cast<int>(lattice_length(be.a, be.b));
        // inward normal of the counterclockwise hull edge
        e.direction = primitive(-(be.b.y - be.a.y), be.b.x - be.a.x);
        e.dual_edge = static_cast<int>(k);
        c.edges.push_back(e);
    }
    return c;
}

struct BalancingViolation {
    int vertex;
    std::int64_t sum_x, sum_y;
};

inline std::vector<BalancingViolation> check_balancing(const PlaneCurve& c) {
    std::vector<std::int64_t> sx(c.vertices.size()), sy(c.vertices.size());
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        const auto& ed = c.edges[e];
        sx[ed.tail] += ed.weight * ed.direction.dx;
        sy[ed.tail] += ed.weight * ed.direction.dy;
        if (ed.bounded()) {
            sx[ed.head] -= ed.weight * ed.direction.dx;
            sy[ed.head] -= ed.weight * ed.direction.dy;
        }
    }
    std::vector<BalancingViolation> out;
    for (std::size_t v = 0; v < c.vertices.size(); ++v)
        if (sx[v] != 0 || sy[v] != 0) out.push_back({static_cast<int>(v), sx[v], sy[v]});
    return out;
}

inline bool is_smooth(const PlaneCurve& c) {
    return std::all_of(c.subdivision.faces.begin(), c.subdivision.faces.end(),
                       [](const LatticePolygon& f) { return f.size() == 3 && f.twice_area() == 1; });
}

struct SingularVertex {
    int vertex;
    Rational area;
};

inline std::vector<SingularVertex> singular_vertices(const PlaneCurve& c) {
    std::vector<SingularVertex> out;
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        const auto& face = c.subdivision.faces[c.vertices[v].dual_face];
        if (face.twice_area() > 1) out.push_back({static_cast<int>(v), shoelace_area(face)});
    }
    return out;
}

struct GenusReport {
    int b1 = 0;
    int vertex_weight_sum = 0;
    int edge_weight_excess = 0;
    int g_sigma = 0;
};

inline GenusReport genus(const PlaneCurve& c) {
    const int n = static_cast<int>(c.vertices.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int bounded = 0, components = n;
    GenusReport r;
    for (const auto& e : c.edges) {
        if (!e.bounded()) continue;
        ++bounded;
        r.edge_weight_excess += e.weight - 1;
        int a = find(e.tail), b = find(e.head);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    if (components != 1) throw Error(ErrorCode::DegenerateGeometry, "curve is disconnected");
    for (const auto& v : c.vertices) r.vertex_weight_sum += v.weight;
    r.b1 = bounded - n + 1;
    r.g_sigma = r.b1 + r.vertex_weight_sum + r.edge_weight_excess;
    return r;
}

}  // namespace tropbt
