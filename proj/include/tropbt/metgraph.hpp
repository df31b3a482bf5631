#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace tropbt {

struct MetricEdge {
    int u = 0, v = 0;
    Rational length;
};

struct MetricRay {
    int base = 0;
    std::string label;
};

// Finite core (vertices, edges with positive rational length; loops and parallel edges allowed)
// plus rays, each closed off by a formal point at infinity.
struct MetricGraph {
    int vertex_count = 0;
    std::vector<MetricEdge> edges;
    std::vector<MetricRay> rays;

    int add_vertex() { return vertex_count++; }
    int add_edge(int u, int v, Rational length) {
        edges.push_back({u, v, std::move(length)});
        return static_cast<int>(edges.size()) - 1;
    }
    int add_ray(int base, std::string label = {}) {
        rays.push_back({base, std::move(label)});
        return static_cast<int>(rays.size()) - 1;
    }

    std::vector<std::vector<int>> incidence() const {
        std::vector<std::vector<int>> inc(vertex_count);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            inc[edges[e].u].push_back(static_cast<int>(e));
            if (edges[e].v != edges[e].u) inc[edges[e].v].push_back(static_cast<int>(e));
        }
        return inc;
    }

    // Valence counting bounded edges only; a loop counts twice.
    int core_valence(int v) const {
        int n = 0;
        for (const auto& e : edges) n += (e.u == v) + (e.v == v);
        return n;
    }

    void validate() const {
        for (const auto& e : edges) {
            if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
                throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
            if (sgn(e.length) <= 0) throw Error(ErrorCode::InvalidArgument, "edge length must be positive");
        }
        for (const auto& r : rays)
            if (r.base < 0 || r.base >= vertex_count) throw Error(ErrorCode::InvalidArgument, "ray base out of range");
        if (vertex_count == 0) throw Error(ErrorCode::InvalidArgument, "graph without vertices");
        std::vector<int> parent(vertex_count);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        int comps = vertex_count;
        for (const auto& e : edges) {
            int a = find(e.u), b = find(e.v);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        if (comps != 1) throw Error(ErrorCode::InvalidArgument, "metric graph is disconnected");
    }
};

inline int betti_number(const MetricGraph& g) {
    return static_cast<int>(g.edges.size()) - g.vertex_count + 1;
}

struct GraphPoint {
    enum class Kind : int { Vertex = 0, Edge = 1, Ray = 2, RayInfinity = 3 };

    Kind kind = Kind::Vertex;
    int id = 0;
    Rational offset;

    static GraphPoint vertex(int v) { return {Kind::Vertex, v, Rational(0)}; }
    static GraphPoint ray_infinity(int r) { return {Kind::RayInfinity, r, Rational(0)}; }

    bool is_vertex() const { return kind == Kind::Vertex; }

    friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
        return a.kind == b.kind && a.id == b.id && a.offset == b.offset;
    }
    friend bool operator!=(const GraphPoint& a, const GraphPoint& b) { return !(a == b); }
    friend bool operator<(const GraphPoint& a, const GraphPoint& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.id != b.id) return a.id < b.id;
        return a.offset < b.offset;
    }
};

// Point at offset s from edge e's first endpoint, snapped to a vertex at either end.
inline GraphPoint on_edge(const MetricGraph& g, int e, const Rational& s) {
    const auto& ed = g.edges.at(e);
    if (sgn(s) < 0 || s > ed.length) throw Error(ErrorCode::InvalidArgument, "edge offset out of range");
    if (sgn(s) == 0) return GraphPoint::vertex(ed.u);
    if (s == ed.length) return GraphPoint::vertex(ed.v);
    return {GraphPoint::Kind::Edge, e, s};
}

inline GraphPoint on_ray(const MetricGraph& g, int r, const Rational& s) {
    const auto& ray = g.rays.at(r);
    if (sgn(s) < 0) throw Error(ErrorCode::InvalidArgument, "ray offset out of range");
    if (sgn(s) == 0) return GraphPoint::vertex(ray.base);
    return {GraphPoint::Kind::Ray, r, s};
}

class Divisor {
public:
    using Map = std::map<GraphPoint, std::int64_t>;

    Divisor() = default;

    void add(const GraphPoint& p, std::int64_t k) {
        if (k == 0) return;
        auto [it, inserted] = chips_.try_emplace(p, k);
        if (!inserted) {
            it->second += k;
            if (it->second == 0) chips_.erase(it);
        }
    }

    std::int64_t operator[](const GraphPoint& p) const {
        auto it = chips_.find(p);
        return it == chips_.end() ? 0 : it->second;
    }

    std::int64_t degree() const {
        std::int64_t d = 0;
        for (const auto& [p, k] : chips_) d += k;
        return d;
    }

    bool is_effective() const {
        return std::all_of(chips_.begin(), chips_.end(), [](const auto& c) { return c.second > 0; });
    }

    bool empty() const { return chips_.empty(); }
    const Map& chips() const { return chips_; }
    Map::const_iterator begin() const { return chips_.begin(); }
    Map::const_iterator end() const { return chips_.end(); }

    Divisor& operator+=(const Divisor& o) {
        for (const auto& [p, k] : o.chips_) add(p, k);
        return *this;
    }
    Divisor& operator-=(const Divisor& o) {
        for (const auto& [p, k] : o.chips_) add(p, -k);
        return *this;
    }
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    Divisor scaled(std::int64_t s) const {
        Divisor out;
        for (const auto& [p, k] : chips_) out.add(p, k * s);
        return out;
    }

    friend bool operator==(const Divisor& a, const Divisor& b) { return a.chips_ == b.chips_; }
    friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }
    friend bool operator<(const Divisor& a, const Divisor& b) { return a.chips_ < b.chips_; }

private:
    Map chips_;
};

inline Divisor point_divisor(const GraphPoint& p, std::int64_t k = 1) {
    Divisor d;
    d.add(p, k);
    return d;
}

// Continuous piecewise-linear function. Each edge list runs from offset 0 to the edge length;
// an empty list means linear between the endpoint values. Each ray list starts at offset 0
// and continues with ray_tail_slope after its last breakpoint; an empty list means constant.
struct PLFunction {
    using Breaks = std::vector<std::pair<Rational, Rational>>;

    std::vector<Rational> vertex_value;
    std::vector<Breaks> edge_breaks;
    std::vector<Breaks> ray_breaks;
    std::vector<std::int64_t> ray_tail_slope;

    static PLFunction constant(const MetricGraph& g, const Rational& c) {
        PLFunction f;
        f.vertex_value.assign(g.vertex_count, c);
        f.edge_breaks.resize(g.edges.size());
        f.ray_breaks.resize(g.rays.size());
        f.ray_tail_slope.assign(g.rays.size(), 0);
        return f;
    }
};

namespace detail {

inline std::int64_t integer_slope(const Rational& dv, const Rational& ds) {
    Rational s = dv / ds;
    if (s.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "piecewise-linear function has a non-integer slope");
    return s.get_num().get_si();
}

}  // namespace detail

// Coefficient at p is the sum of the slopes of f along all directions entering p.
inline Divisor divisor_of_function(const MetricGraph& g, const PLFunction& f) {
    if (f.vertex_value.size() != static_cast<std::size_t>(g.vertex_count) || f.edge_breaks.size() != g.edges.size() ||
        f.ray_breaks.size() != g.rays.size() || f.ray_tail_slope.size() != g.rays.size())
        throw Error(ErrorCode::InvalidArgument, "function does not match graph");
    Divisor d;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        PLFunction::Breaks pts = f.edge_breaks[e];
        if (pts.empty()) pts = {{Rational(0), f.vertex_value[ed.u]}, {ed.length, f.vertex_value[ed.v]}};
        if (pts.size() < 2 || sgn(pts.front().first) != 0 || pts.back().first != ed.length)
            throw Error(ErrorCode::InvalidArgument, "edge breakpoints must span the whole edge");
        if (pts.front().second != f.vertex_value[ed.u] || pts.back().second != f.vertex_value[ed.v])
            throw Error(ErrorCode::InvalidArgument, "discontinuous function");
        std::int64_t prev = 0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i + 1].first <= pts[i].first) throw Error(ErrorCode::InvalidArgument, "breakpoints not increasing");
            std::int64_t s = detail::integer_slope(pts[i + 1].second - pts[i].second, pts[i + 1].first - pts[i].first);
            if (i == 0) d.add(GraphPoint::vertex(ed.u), -s);
            else d.add(on_edge(g, static_cast<int>(e), pts[i].first), prev - s);
            prev = s;
        }
        d.add(GraphPoint::vertex(ed.v), prev);
    }
    for (std::size_t r = 0; r < g.rays.size(); ++r) {
        const int base = g.rays[r].base;
        PLFunction::Breaks pts = f.ray_breaks[r];
        if (pts.empty()) pts = {{Rational(0), f.vertex_value[base]}};
        if (sgn(pts.front().first) != 0) throw Error(ErrorCode::InvalidArgument, "ray breakpoints must start at 0");
        if (pts.front().second != f.vertex_value[base]) throw Error(ErrorCode::InvalidArgument, "discontinuous function");
        std::int64_t prev = 0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i + 1].first <= pts[i].first) throw Error(ErrorCode::InvalidArgument, "breakpoints not increasing");
            std::int64_t s = detail::integer_slope(pts[i + 1].second - pts[i].second, pts[i + 1].first - pts[i].first);
            if (i == 0) d.add(GraphPoint::vertex(base), -s);
            else d.add(on_ray(g, static_cast<int>(r), pts[i].first), prev - s);
            prev = s;
        }
        const std::int64_t tail = f.ray_tail_slope[r];
        if (pts.size() == 1) d.add(GraphPoint::vertex(base), -tail);
        else d.add(on_ray(g, static_cast<int>(r), pts.back().first), prev - tail);
        d.add(GraphPoint::ray_infinity(static_cast<int>(r)), tail);
    }
    return d;
}

inline Divisor canonical_divisor(const MetricGraph& g) {
    Divisor k;
    for (int v = 0; v < g.vertex_count; ++v) k.add(GraphPoint::vertex(v), g.core_valence(v) - 2);
    return k;
}

inline Divisor retract_to_core(const MetricGraph& g, const Divisor& d) {
    Divisor out;
    for (const auto& [p, k] : d) {
        if (p.kind == GraphPoint::Kind::RayInfinity) throw Error(ErrorCode::InvalidArgument, "chip at infinity");
        if (p.kind == GraphPoint::Kind::Ray) out.add(GraphPoint::vertex(g.rays.at(p.id).base), k);
        else out.add(p, k);
    }
    return out;
}

// Exact single-source shortest paths over the core.
inline std::vector<Rational> core_distances(const MetricGraph& g, const std::vector<int>& sources) {
    const int n = g.vertex_count;
    std::vector<Rational> dist(n);
    std::vector<char> known(n, 0), done(n, 0);
    for (int s : sources) {
        dist[s] = 0;
        known[s] = 1;
    }
    auto inc = g.incidence();
    for (;;) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (known[v] && !done[v] && (best < 0 || dist[v] < dist[best])) best = v;
        if (best < 0) break;
        done[best] = 1;
        for (int e : inc[best]) {
            const auto& ed = g.edges[e];
            int w = ed.u == best ? ed.v : ed.u;
            Rational cand = dist[best] + ed.length;
            if (!known[w] || cand < dist[w]) {
                dist[w] = cand;
                known[w] = 1;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (!known[v]) throw Error(ErrorCode::InvalidArgument, "metric graph is disconnected");
    return dist;
}

// Distance from the source set to the point at offset s on edge e.
inline Rational distance_on_edge(const MetricGraph& g, const std::vector<Rational>& dist, int e, const Rational& s) {
    const auto& ed = g.edges[e];
    Rational a = dist[ed.u] + s, b = dist[ed.v] + ed.length - s;
    return a < b ? a : b;
}

// Offset of the maximum of the distance function along edge e.
inline Rational distance_peak(const MetricGraph& g, const std::vector<Rational>& dist, int e) {
    const auto& ed = g.edges[e];
    return Rational((dist[ed.v] - dist[ed.u] + ed.length) / 2);
}

struct ReducedForm {
    GraphPoint base;
    Divisor divisor;

    friend bool operator==(const ReducedForm& a, const ReducedForm& b) {
        return a.base == b.base && a.divisor == b.divisor;
    }
    friend bool operator!=(const ReducedForm& a, const ReducedForm& b) { return !(a == b); }
    friend bool operator<(const ReducedForm& a, const ReducedForm& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.divisor < b.divisor;
    }
};

namespace detail {

// The core with hanging trees retracted onto their attachment points and valence-2 vertices
// smoothed away; the base vertex is always kept.
struct Skeleton {
    struct Segment {
        int edge;
        bool forward;
        Rational start;
    };

    MetricGraph graph;
    int base = 0;
    std::vector<int> original_vertex;
    std::vector<std::vector<Segment>> chains;
    std::vector<GraphPoint> vertex_image;
    std::vector<int> edge_chain;  // -1 when the edge lies in a retracted tree
    std::vector<Rational> edge_start;
    std::vector<char> edge_forward;
    std::vector<GraphPoint> collapsed_image;
};

inline Skeleton make_skeleton(const MetricGraph& g, int q) {
    const int n = g.vertex_count;
    const int m = static_cast<int>(g.edges.size());
    auto inc = g.incidence();
    std::vector<int> deg(n, 0);
    for (const auto& e : g.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    std::vector<char> alive(m, 1), removed(n, 0);
    std::vector<int> attach(n, -1), edge_attach(m, -1);
    std::vector<int> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1 && v != q) leaves.push_back(v);
    while (!leaves.empty()) {
        int v = leaves.back();
        leaves.pop_back();
        if (removed[v] || deg[v] != 1) continue;
        int e = -1;
        for (int x : inc[v])
            if (alive[x]) e = x;
        const int w = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
        alive[e] = 0;
        removed[v] = 1;
        attach[v] = w;
        edge_attach[e] = w;
        --deg[v];
        --deg[w];
        if (deg[w] == 1 && w != q) leaves.push_back(w);
    }

    auto single_loop = [&](int v) {
        int alive_ends = 0;
        bool loop = false;
        for (int e : inc[v])
            if (alive[e]) {
                ++alive_ends;
                loop = loop || g.edges[e].u == g.edges[e].v;
            }
        return alive_ends == 1 && loop;
    };
    Skeleton sk;
    std::vector<int> skel_id(n, -1);
    for (int v = 0; v < n; ++v) {
        if (removed[v]) continue;
        if (v == q || deg[v] != 2 || single_loop(v)) {
            skel_id[v] = sk.graph.add_vertex();
            sk.original_vertex.push_back(v);
        }
    }
    sk.base = skel_id[q];
    sk.vertex_image.assign(n, GraphPoint::vertex(0));
    sk.edge_chain.assign(m, -1);
    sk.edge_start.assign(m, Rational(0));
    sk.edge_forward.assign(m, 1);
    std::vector<char> used(m, 0);
    std::vector<std::pair<int, Rational>> interior_vertex(n, {-1, Rational(0)});
    for (int x = 0; x < n; ++x) {
        if (skel_id[x] < 0) continue;
        sk.vertex_image[x] = GraphPoint::vertex(skel_id[x]);
        for (int e0 : inc[x]) {
            if (!alive[e0] || used[e0]) continue;
            const int k = static_cast<int>(sk.chains.size());
            sk.chains.emplace_back();
            Rational acc(0);
            int cur = x, e = e0;
            for (;;) {
                const auto& ed = g.edges[e];
                const bool fwd = ed.u == cur;
                sk.chains[k].push_back({e, fwd, acc});
                used[e] = 1;
                sk.edge_chain[e] = k;
                sk.edge_start[e] = acc;
                sk.edge_forward[e] = fwd;
                acc += ed.length;
                const int next = fwd ? ed.v : ed.u;
                if (skel_id[next] >= 0) {
                    sk.graph.add_edge(skel_id[x], skel_id[next], acc);
                    break;
                }
                interior_vertex[next] = {k, acc};
                int nxt = -1;
                for (int f : inc[next])
                    if (alive[f] && f != e) nxt = f;
                cur = next;
                e = nxt;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (!removed[v] && skel_id[v] < 0)
            sk.vertex_image[v] = {GraphPoint::Kind::Edge, interior_vertex[v].first, interior_vertex[v].second};
    auto resolve = [&](int v) {
        while (removed[v]) v = attach[v];
        return v;
    };
    for (int v = 0; v < n; ++v)
        if (removed[v]) sk.vertex_image[v] = sk.vertex_image[resolve(v)];
    sk.collapsed_image.assign(m, GraphPoint::vertex(0));
    for (int e = 0; e < m; ++e)
        if (edge_attach[e] >= 0) sk.collapsed_image[e] = sk.vertex_image[resolve(edge_attach[e])];
    return sk;
}

inline GraphPoint to_skeleton(const Skeleton& sk, const MetricGraph& g, const GraphPoint& p) {
    switch (p.kind) {
    case GraphPoint::Kind::Vertex: return sk.vertex_image.at(p.id);
    case GraphPoint::Kind::Edge: {
        const int k = sk.edge_chain.at(p.id);
        if (k < 0) return sk.collapsed_image[p.id];
        Rational s = sk.edge_forward[p.id] ? Rational(sk.edge_start[p.id] + p.offset)
                                           : Rational(sk.edge_start[p.id] + g.edges[p.id].length - p.offset);
        return on_edge(sk.graph, k, s);
    }
    default: throw Error(ErrorCode::InvalidArgument, "point is not on the core");
    }
}

inline GraphPoint from_skeleton(const Skeleton& sk, const MetricGraph& g, const GraphPoint& p) {
    if (p.kind == GraphPoint::Kind::Vertex) return GraphPoint::vertex(sk.original_vertex.at(p.id));
    for (const auto& seg : sk.chains.at(p.id)) {
        const Rational& len = g.edges[seg.edge].length;
        if (p.offset <= seg.start + len) {
            Rational local = p.offset - seg.start;
            return on_edge(g, seg.edge, seg.forward ? local : Rational(len - local));
        }
    }
    throw Error(ErrorCode::InvalidArgument, "skeleton offset out of range");
}

// Graph with the skeleton's vertices plus every support point inside an edge.
struct Model {
    struct Piece {
        int a, b;
        Rational len;
        int edge;
        Rational start;
    };
    std::vector<GraphPoint> points;
    std::vector<Piece> pieces;
    std::vector<std::vector<int>> inc;
};

inline Model build_model(const MetricGraph& s, const Divisor& d) {
    Model m;
    std::map<GraphPoint, int> id;
    for (int v = 0; v < s.vertex_count; ++v) m.points.push_back(GraphPoint::vertex(v));
    std::vector<std::vector<Rational>> cuts(s.edges.size());
    for (const auto& [p, k] : d)
        if (p.kind == GraphPoint::Kind::Edge) cuts[p.id].push_back(p.offset);
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        const auto& ed = s.edges[e];
        int prev = ed.u;
        Rational at(0);
        for (const auto& c : cuts[e]) {  // already sorted: map order is by offset within an edge
            int v = static_cast<int>(m.points.size());
            m.points.push_back({GraphPoint::Kind::Edge, static_cast<int>(e), c});
            m.pieces.push_back({prev, v, Rational(c - at), static_cast<int>(e), at});
            prev = v;
            at = c;
        }
        m.pieces.push_back({prev, ed.v, Rational(ed.length - at), static_cast<int>(e), at});
    }
    m.inc.resize(m.points.size());
    for (std::size_t i = 0; i < m.pieces.size(); ++i) {
        m.inc[m.pieces[i].a].push_back(static_cast<int>(i));
        if (m.pieces[i].b != m.pieces[i].a) m.inc[m.pieces[i].b].push_back(static_cast<int>(i));
    }
    return m;
}

inline Rational point_distance(const MetricGraph& s, const std::vector<Rational>& dist, const GraphPoint& p) {
    if (p.kind == GraphPoint::Kind::Vertex) return dist[p.id];
    return distance_on_edge(s, dist, p.id, p.offset);
}

// m·clamp(d(q,·) − r, 0, t − r) as an explicit piecewise-linear function on a rayless graph.
inline PLFunction clamped_distance(const MetricGraph& s, const std::vector<Rational>& dist, const Rational& r,
                                   const Rational& t, std::int64_t m) {
    PLFunction f = PLFunction::constant(s, Rational(0));
    auto value = [&](const Rational& d) {
        Rational x = d - r;
        if (sgn(x) < 0) x = 0;
        if (x > t - r) x = t - r;
        return Rational(x * m);
    };
    for (int v = 0; v < s.vertex_count; ++v) f.vertex_value[v] = value(dist[v]);
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        const auto& ed = s.edges[e];
        const Rational peak = distance_peak(s, dist, static_cast<int>(e));
        std::vector<Rational> offs{Rational(0), ed.length};
        auto consider = [&](const Rational& o) {
            if (sgn(o) > 0 && o < ed.length) offs.push_back(o);
        };
        consider(peak);
        for (const Rational* level : {&r, &t}) {
            Rational up = *level - dist[ed.u];
            if (up < peak) consider(up);
            Rational down = ed.length - (*level - dist[ed.v]);
            if (down > peak) consider(down);
        }
        std::sort(offs.begin(), offs.end());
        offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
        auto& br = f.edge_breaks[e];
        for (const auto& o : offs) br.push_back({o, value(distance_on_edge(s, dist, static_cast<int>(e), o))});
    }
    return f;
}

// Moves every negative chip away from q by firing distance balls around q, farthest level first.
inline Divisor effective_away_from(const MetricGraph& s, int q, Divisor d) {
    const auto dist = core_distances(s, {q});
    std::vector<Rational> levels(dist.begin(), dist.end());
    std::sort(levels.begin(), levels.end());
    for (;;) {
        bool any = false;
        Rational t;
        for (const auto& [p, k] : d) {
            if (k >= 0 || p == GraphPoint::vertex(q)) continue;
            Rational lv = point_distance(s, dist, p);
            if (!any || lv > t) t = lv;
            any = true;
        }
        if (!any) return d;
        std::int64_t m = 0;
        for (const auto& [p, k] : d)
            if (k < 0 && p != GraphPoint::vertex(q) && point_distance(s, dist, p) == t) m = std::max(m, -k);
        Rational r(0);
        for (const auto& lv : levels)
            if (lv < t) r = lv;
        d += divisor_of_function(s, clamped_distance(s, dist, r, t, m));
    }
}

// Dhar burning from q; fires the unburnt region until everything burns.
inline Divisor dhar_reduce(const MetricGraph& s, int q, Divisor d) {
    for (;;) {
        Model m = build_model(s, d);
        const std::size_t n = m.points.size();
        std::vector<char> burnt(n, 0), piece_burnt(m.pieces.size(), 0);
        std::vector<std::int64_t> hits(n, 0);
        std::vector<int> stack{q};
        burnt[q] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int pi : m.inc[x]) {
                if (piece_burnt[pi]) continue;
                piece_burnt[pi] = 1;
                const auto& pc = m.pieces[pi];
                int y = pc.a == x ? pc.b : pc.a;
                if (y == x || burnt[y]) continue;
                if (++hits[y] > d[m.points[y]]) {
                    burnt[y] = 1;
                    stack.push_back(y);
                }
            }
        }
        if (std::all_of(burnt.begin(), burnt.end(), [](char b) { return b != 0; })) return d;
        bool have = false;
        Rational delta;
        for (const auto& pc : m.pieces)
            if (pc.a != pc.b && burnt[pc.a] != burnt[pc.b] && (!have || pc.len < delta)) {
                delta = pc.len;
                have = true;
            }
        Divisor moved;
        for (const auto& pc : m.pieces) {
            if (pc.a == pc.b || burnt[pc.a] == burnt[pc.b]) continue;
            const bool from_a = !burnt[pc.a];
            const int x = from_a ? pc.a : pc.b;
            Rational off = from_a ? Rational(pc.start + delta) : Rational(pc.start + pc.len - delta);
            moved.add(m.points[x], -1);
            moved.add(on_edge(s, pc.edge, off), 1);
        }
        d += moved;
    }
}

}  // namespace detail

// Reduction, equivalence and rank on one graph with a fixed base vertex. The work happens on
// the skeleton; rays and hanging trees only ever carry chips that slide to their attachment.
class Reducer {
public:
    Reducer(const MetricGraph& g, int base) : g_(g), sk_(detail::make_skeleton(g, base)), base_(base) {
        for (int v = 0; v < sk_.graph.vertex_count; ++v) rank_set_.push_back(GraphPoint::vertex(v));
        for (std::size_t e = 0; e < sk_.graph.edges.size(); ++e) {
            const auto& ed = sk_.graph.edges[e];
            if (ed.u == ed.v) rank_set_.push_back(on_edge(sk_.graph, static_cast<int>(e), Rational(ed.length / 2)));
        }
    }

    const MetricGraph& graph() const { return g_; }
    int base() const { return base_; }
    int genus() const { return betti_number(g_); }

    Divisor to_skeleton(const Divisor& d) const {
        Divisor out;
        for (const auto& [p, k] : retract_to_core(g_, d)) out.add(detail::to_skeleton(sk_, g_, p), k);
        return out;
    }

    Divisor from_skeleton(const Divisor& d) const {
        Divisor out;
        for (const auto& [p, k] : d) out.add(detail::from_skeleton(sk_, g_, p), k);
        return out;
    }

    Divisor reduce_skeleton(const Divisor& d) const {
        return detail::dhar_reduce(sk_.graph, sk_.base, detail::effective_away_from(sk_.graph, sk_.base, d));
    }

    ReducedForm reduce(const Divisor& d) const {
        return {GraphPoint::vertex(base_), from_skeleton(reduce_skeleton(to_skeleton(d)))};
    }

    bool equivalent(const Divisor& a, const Divisor& b) const {
        if (a.degree() != b.degree()) return false;
        return reduce_skeleton(to_skeleton(a - b)).empty();
    }

    bool equivalent_to_effective(const Divisor& d) const {
        if (d.degree() < 0) return false;
        return reduce_skeleton(to_skeleton(d))[GraphPoint::vertex(sk_.base)] >= 0;
    }

    // Checks D − E against all effective E of growing degree supported on a rank-determining set.
    int rank(const Divisor& d) const {
        const std::int64_t deg = d.degree();
        if (deg < 0) return -1;
        const Divisor ds = to_skeleton(d);
        auto effective = [&](const Divisor& x) {
            return reduce_skeleton(x)[GraphPoint::vertex(sk_.base)] >= 0;
        };
        if (!effective(ds)) return -1;
        const int n = static_cast<int>(rank_set_.size());
        for (std::int64_t k = 1; k <= deg; ++k) {
            std::vector<int> pick(k, 0);
            for (;;) {
                Divisor x = ds;
                for (int i : pick) x.add(rank_set_[i], -1);
                if (!effective(x)) return static_cast<int>(k - 1);
                int pos = static_cast<int>(k) - 1;
                while (pos >= 0 && pick[pos] == n - 1) --pos;
                if (pos < 0) break;
                ++pick[pos];
                for (int i = pos + 1; i < k; ++i) pick[i] = pick[pos];
            }
        }
        return static_cast<int>(deg);
    }

    const detail::Skeleton& skeleton() const { return sk_; }

private:
    MetricGraph g_;
    detail::Skeleton sk_;
    int base_;
    std::vector<GraphPoint> rank_set_;
};

inline ReducedForm reduced_divisor(const MetricGraph& g, const Divisor& d, const GraphPoint& q) {
    if (!q.is_vertex()) throw Error(ErrorCode::InvalidArgument, "base point must be a vertex");
    return Reducer(g, q.id).reduce(d);
}

inline bool is_equivalent(const MetricGraph& g, const Divisor& d1, const Divisor& d2) {
    if (d1.degree() != d2.degree()) return false;
    return Reducer(g, 0).equivalent(d1, d2);
}

inline int rank(const MetricGraph& g, const Divisor& d) { return Reducer(g, 0).rank(d); }

}  // namespace tropbt
