#pragma once

// Independent reference computations used by the tests. None of these call into the code under
// test beyond plain data types.

#include "tropbt.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using tropbt::Divisor;
using tropbt::GraphPoint;
using tropbt::LatticePoint;
using tropbt::MetricGraph;
using tropbt::Point2;
using tropbt::Rational;

inline std::int64_t cross3(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Faces of the regular subdivision by brute force: every non-collinear triple spans a plane; it
// supports a lower face when no lifted point lies below it. The face is the set of points on it.
inline std::set<std::set<LatticePoint>> lower_faces(const std::map<LatticePoint, Rational>& lift) {
    std::vector<std::pair<LatticePoint, Rational>> pts(lift.begin(), lift.end());
    std::set<std::set<LatticePoint>> faces;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const auto& [a, za] = pts[i];
                const auto& [b, zb] = pts[j];
                const auto& [c, zc] = pts[k];
                const std::int64_t det = cross3(a, b, c);
                if (det == 0) continue;
                // z = z_a + α (x − a.x) + β (y − a.y)
                const Rational db = zb - za, dc = zc - za;
                const Rational alpha = (db * (c.y - a.y) - dc * (b.y - a.y)) / det;
                const Rational beta = (dc * (b.x - a.x) - db * (c.x - a.x)) / det;
                bool lower = true;
                std::set<LatticePoint> on;
                for (const auto& [p, z] : pts) {
                    const Rational plane = za + alpha * (p.x - a.x) + beta * (p.y - a.y);
                    if (z < plane) {
                        lower = false;
                        break;
                    }
                    if (z == plane) on.insert(p);
                }
                if (lower) faces.insert(on);
            }
    return faces;
}

inline std::int64_t twice_shoelace(const std::vector<LatticePoint>& v) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        s += (p.x + q.x) * (q.y - p.y);
    }
    return s;
}

// Boundary lattice points from gcds, interior ones by testing every point of the bounding box.
inline std::pair<std::int64_t, std::int64_t> lattice_counts(const std::vector<LatticePoint>& v) {
    std::int64_t boundary = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        boundary += std::gcd(std::abs(q.x - p.x), std::abs(q.y - p.y));
    }
    std::int64_t x0 = v[0].x, x1 = x0, y0 = v[0].y, y1 = y0;
    for (const auto& p : v) {
        x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    std::int64_t interior = 0;
    for (std::int64_t x = x0; x <= x1; ++x)
        for (std::int64_t y = y0; y <= y1; ++y) {
            bool strictly = true;
            for (std::size_t i = 0; i < v.size() && strictly; ++i)
                strictly = cross3(v[i], v[(i + 1) % v.size()], {x, y}) > 0;
            interior += strictly;
        }
    return {boundary, interior};
}

// Unit subdivision of a metric graph with rational lengths: every edge is cut into pieces of
// length 1/N. Rays are dropped; chips on a ray sit at its base (a ray is a tree).
class FiniteModel {
public:
    FiniteModel(const MetricGraph& g, std::int64_t scale) : g_(g), n_(scale) {
        vertices_ = g.vertex_count;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const Rational steps = g.edges[e].length * n_;
            if (steps.get_den() != 1) throw std::runtime_error("scale does not subdivide edge lengths");
            const std::int64_t k = steps.get_num().get_si();
            first_inner_.push_back(vertices_);
            steps_.push_back(k);
            vertices_ += static_cast<int>(k - 1);
        }
        adj_.resize(vertices_);
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            int prev = g.edges[e].u;
            for (std::int64_t i = 1; i < steps_[e]; ++i) {
                const int cur = static_cast<int>(first_inner_[e] + i - 1);
                link(prev, cur);
                prev = cur;
            }
            link(prev, g.edges[e].v);
        }
    }

    int size() const { return vertices_; }

    int node_of(const GraphPoint& p) const {
        using K = GraphPoint::Kind;
        if (p.kind == K::Vertex) return p.id;
        if (p.kind == K::Ray || p.kind == K::RayInfinity) return g_.rays[p.id].base;
        const Rational k = p.offset * n_;
        if (k.get_den() != 1) throw std::runtime_error("point not on the model");
        return static_cast<int>(first_inner_[p.id] + k.get_num().get_si() - 1);
    }

    std::vector<std::int64_t> chips(const Divisor& d) const {
        std::vector<std::int64_t> out(vertices_, 0);
        for (const auto& [p, k] : d) out[node_of(p)] += k;
        return out;
    }

    // Effective away from q by firing BFS balls from the deepest level inwards, then Dhar burning.
    std::vector<std::int64_t> reduce(std::vector<std::int64_t> d, int q) const {
        std::vector<int> dist(vertices_, -1);
        std::vector<int> order{q};
        dist[q] = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (int w : adj_[order[i]])
                if (dist[w] < 0) {
                    dist[w] = dist[order[i]] + 1;
                    order.push_back(w);
                }
        const int depth = dist[order.back()];
        for (int level = depth; level >= 1; --level) {
            std::vector<char> ball(vertices_);
            for (int v = 0; v < vertices_; ++v) ball[v] = dist[v] >= 0 && dist[v] < level;
            for (;;) {
                bool negative = false;
                for (int v = 0; v < vertices_; ++v) negative = negative || (dist[v] == level && d[v] < 0);
                if (!negative) break;
                fire(d, ball);
            }
        }
        for (;;) {
            std::vector<char> burnt(vertices_, 0);
            burnt[q] = 1;
            bool changed = true;
            while (changed) {
                changed = false;
                for (int v = 0; v < vertices_; ++v) {
                    if (burnt[v]) continue;
                    std::int64_t fire_edges = 0;
                    for (int w : adj_[v]) fire_edges += burnt[w];
                    if (fire_edges > d[v]) {
                        burnt[v] = 1;
                        changed = true;
                    }
                }
            }
            if (std::all_of(burnt.begin(), burnt.end(), [](char b) { return b; })) return d;
            std::vector<char> unburnt(vertices_);
            for (int v = 0; v < vertices_; ++v) unburnt[v] = !burnt[v];
            fire(d, unburnt);
        }
    }

    bool equivalent(const Divisor& a, const Divisor& b, int q = 0) const {
        if (a.degree() != b.degree()) return false;
        auto r = reduce(chips(a - b), q);
        return std::all_of(r.begin(), r.end(), [](std::int64_t k) { return k == 0; });
    }

private:
    void link(int a, int b) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }

    void fire(std::vector<std::int64_t>& d, const std::vector<char>& set) const {
        for (int v = 0; v < vertices_; ++v) {
            if (!set[v]) continue;
            for (int w : adj_[v])
                if (!set[w]) {
                    --d[v];
                    ++d[w];
                }
        }
    }

    MetricGraph g_;
    std::int64_t n_;
    int vertices_ = 0;
    std::vector<std::int64_t> first_inner_, steps_;
    std::vector<std::vector<int>> adj_;
};

// Smallest N with every edge length and every listed point offset a multiple of 1/N.
inline std::int64_t common_scale(const MetricGraph& g, const std::vector<Divisor>& ds) {
    std::int64_t n = 1;
    auto take = [&](const Rational& r) {
        const std::int64_t den = r.get_den().get_si();
        n = std::lcm(n, den);
    };
    for (const auto& e : g.edges) take(e.length);
    for (const auto& d : ds)
        for (const auto& [p, k] : d)
            if (p.kind == GraphPoint::Kind::Edge) take(p.offset);
    return n;
}

// Transverse intersection of the line translated by t·v with the curve: each crossing of an arm
// (primitive u) with an edge of weight w and primitive d has multiplicity w·|det(u, d)|.
inline std::vector<std::pair<Point2, std::int64_t>> perturbed_intersection(const tropbt::TropicalLine& line,
                                                                          const tropbt::PlaneCurve& c,
                                                                          const tropbt::Direction& v, const Rational& t) {
    const Point2 o{Rational(line.vertex.x + t * v.dx), Rational(line.vertex.y + t * v.dy)};
    std::vector<std::pair<Point2, std::int64_t>> out;
    for (const auto& u : tropbt::kLineArms)
        for (const auto& e : c.edges) {
            const auto& a = c.vertices[e.tail].position;
            const auto& d = e.direction;
            const std::int64_t det = u.dx * (-d.dy) - u.dy * (-d.dx);
            if (det == 0) continue;
            // o + s·u = a + r·d
            const Rational rx = a.x - o.x, ry = a.y - o.y;
            const Rational s = (rx * (-d.dy) - ry * (-d.dx)) / det;
            const Rational r = (u.dx * ry - u.dy * rx) / det;
            if (sgn(s) <= 0 || sgn(r) <= 0) continue;
            if (e.bounded() && r >= e.length) continue;
            out.push_back({{Rational(o.x + s * u.dx), Rational(o.y + s * u.dy)}, e.weight * std::abs(u.dx * d.dy - u.dy * d.dx)});
        }
    return out;
}

inline std::vector<signed char> sign_vector(const std::vector<tropbt::ParamLine>& lines, const Point2& p) {
    std::vector<signed char> s;
    for (const auto& l : lines) s.push_back(static_cast<signed char>(sgn(Rational(l.a * p.x + l.b * p.y - l.c))));
    return s;
}

}  // namespace oracle
