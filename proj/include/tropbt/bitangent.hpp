#pragma once

#include "theta.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tropbt {

struct TropicalLine {
    Point2 vertex;
};

// Min-plus line: rays (1,0), (0,1), (−1,−1) from the vertex.
inline constexpr std::array<Direction, 3> kLineArms{Direction{1, 0}, Direction{0, 1}, Direction{-1, -1}};

// Position on the line: arm -1 with t = 0 is the vertex; otherwise vertex + t·arm with t > 0.
struct LinePos {
    int arm = -1;
    Rational t;

    friend bool operator==(const LinePos& a, const LinePos& b) { return a.arm == b.arm && a.t == b.t; }
    friend bool operator<(const LinePos& a, const LinePos& b) {
        if (a.arm != b.arm) return a.arm < b.arm;
        return a.t < b.t;
    }
};

inline LinePos line_pos(int arm, const Rational& t) { return sgn(t) == 0 ? LinePos{-1, Rational(0)} : LinePos{arm, t}; }

inline Point2 line_point(const TropicalLine& l, const LinePos& p) {
    if (p.arm < 0) return l.vertex;
    return offset_point(l.vertex, kLineArms[p.arm], p.t);
}

// Piece of Λ∩Γ on one arm: [lo, hi] (hi unbounded if open_end), or the vertex alone.
struct LineInterval {
    int arm = -1;
    Rational lo, hi;
    bool open_end = false;
    int curve_edge = -1;  // overlapping curve edge, or -1 for a single point
};

struct IntersectionComponent {
    struct Chip {
        GraphPoint point;  // on Γ
        Point2 position;
        LinePos where;
        int multiplicity = 0;
    };

    std::vector<LineInterval> geometry;
    int multiplicity = 0;
    std::vector<Chip> chips;

    bool is_point() const {
        return std::all_of(geometry.begin(), geometry.end(),
                           [](const LineInterval& g) { return !g.open_end && g.lo == g.hi; });
    }
};

// Generic perturbation directions: not parallel to any curve edge or line arm.
inline Direction choose_perturbation(const PlaneCurve& c, int skip = 0) {
    for (int n = 3;; ++n)
        for (int a = 1; a < n; ++a) {
            const int b = n - a;
            for (Direction v : {Direction{a, b}, Direction{-a, b}, Direction{b, -a}}) {
                if (gcd64(v.dx, v.dy) != 1) continue;
                bool ok = std::none_of(kLineArms.begin(), kLineArms.end(), [&](const Direction& d) { return cross(v, d) == 0; });
                for (const auto& e : c.edges) ok = ok && cross(v, e.direction) != 0;
                if (ok && skip-- == 0) return v;
            }
        }
}

namespace detail {

inline bool lex_positive(const Rational& a, const Rational& b) { return sgn(a) > 0 || (sgn(a) == 0 && sgn(b) > 0); }

inline Rational cross_r(const Rational& ax, const Rational& ay, std::int64_t bx, std::int64_t by) {
    return Rational(ax * by - ay * bx);
}

struct RawPiece {
    int arm;
    Rational lo, hi;
    bool open_end;
    int curve_edge;

    bool contains(const LinePos& p) const {
        if (p.arm < 0) return sgn(lo) == 0;
        if (p.arm != arm) return false;
        return p.t >= lo && (open_end || p.t <= hi);
    }
};

inline bool pieces_touch(const RawPiece& a, const RawPiece& b) {
    if (sgn(a.lo) == 0 && sgn(b.lo) == 0) return true;
    if (a.arm != b.arm) return false;
    bool a_before = !a.open_end && a.hi < b.lo;
    bool b_before = !b.open_end && b.hi < a.lo;
    return !a_before && !b_before;
}

}  // namespace detail

// Λ∩Γ split into connected components, each carrying the stable-intersection chips that
// converge into it when Λ is pushed off by ε·v with ε → 0⁺ (handled symbolically).
inline std::vector<IntersectionComponent> stable_intersection(const TropicalLine& line, const PlaneCurve& c,
                                                              const CurveGraph& cg, const Direction& v) {
    std::vector<detail::RawPiece> pieces;
    struct Crossing {
        LinePos where;
        int curve_edge;
        Rational s;
        int mult;
    };
    std::vector<Crossing> crossings;
    for (int r = 0; r < 3; ++r) {
        const Direction d = kLineArms[r];
        for (std::size_t e = 0; e < c.edges.size(); ++e) {
            const auto& ed = c.edges[e];
            const Point2& a = c.vertices[ed.tail].position;
            const Direction u = ed.direction;
            const Rational wx = a.x - line.vertex.x, wy = a.y - line.vertex.y;
            const std::int64_t det = cross(d, u);
            if (det != 0) {
                Rational t0 = detail::cross_r(wx, wy, u.dx, u.dy) / det;
                Rational s0 = detail::cross_r(wx, wy, d.dx, d.dy) / det;
                if (sgn(t0) < 0 || sgn(s0) < 0 || (ed.bounded() && s0 > ed.length)) continue;
                pieces.push_back({r, t0, t0, false, -1});
                const Rational t1 = Rational(-cross(v, u)) / det;
                const Rational s1 = Rational(-cross(v, d)) / det;
                if (!detail::lex_positive(t0, t1) || !detail::lex_positive(s0, s1)) continue;
                if (ed.bounded() && !detail::lex_positive(Rational(ed.length - s0), Rational(-s1))) continue;
                crossings.push_back({line_pos(r, t0), static_cast<int>(e), s0, ed.weight * static_cast<int>(det < 0 ? -det : det)});
            } else if (sgn(detail::cross_r(wx, wy, d.dx, d.dy)) == 0) {
                const Rational ta = param_along(line.vertex, d, a);
                Rational lo, hi;
                bool open_end = false, open_start = false;
                if (u == d) {
                    lo = ta;
                    if (ed.bounded()) hi = ta + ed.length;
                    else open_end = true;
                } else {
                    hi = ta;
                    if (ed.bounded()) lo = ta - ed.length;
                    else open_start = true;
                }
                if (open_start || sgn(lo) < 0) lo = 0;
                if (!open_end && hi < lo) continue;
                pieces.push_back({r, lo, hi, open_end, !open_end && hi == lo ? -1 : static_cast<int>(e)});
            }
        }
    }
    // connected components of the pieces
    const std::size_t n = pieces.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<std::size_t> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y = 0; y < n; ++y)
                if (comp[y] < 0 && detail::pieces_touch(pieces[x], pieces[y])) {
                    comp[y] = ncomp;
                    stack.push_back(y);
                }
        }
        ++ncomp;
    }
    std::vector<IntersectionComponent> out(ncomp);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = pieces[i];
        out[comp[i]].geometry.push_back({sgn(p.lo) == 0 && !p.open_end && sgn(p.hi) == 0 ? -1 : p.arm, p.lo, p.hi,
                                         p.open_end, p.curve_edge});
    }
    std::vector<std::map<GraphPoint, IntersectionComponent::Chip>> chips(ncomp);
    for (const auto& x : crossings) {
        int k = -1;
        for (std::size_t i = 0; i < n && k < 0; ++i)
            if (pieces[i].contains(x.where)) k = comp[i];
        if (k < 0) throw Error(ErrorCode::DegenerateGeometry, "stable limit point outside the set-theoretic intersection");
        GraphPoint gp = curve_point(c, cg, x.curve_edge, x.s);
        auto& chip = chips[k][gp];
        chip.point = gp;
        chip.position = line_point(line, x.where);
        chip.where = x.where;
        chip.multiplicity += x.mult;
        out[k].multiplicity += x.mult;
    }
    for (int k = 0; k < ncomp; ++k) {
        for (auto& [gp, chip] : chips[k]) out[k].chips.push_back(chip);
        auto& g = out[k].geometry;
        std::sort(g.begin(), g.end(), [](const LineInterval& a, const LineInterval& b) {
            if (a.arm != b.arm) return a.arm < b.arm;
            if (a.lo != b.lo) return a.lo < b.lo;
            return a.curve_edge < b.curve_edge;
        });
    }
    std::sort(out.begin(), out.end(), [](const IntersectionComponent& a, const IntersectionComponent& b) {
        const auto& x = a.geometry.front();
        const auto& y = b.geometry.front();
        if (x.arm != y.arm) return x.arm < y.arm;
        return x.lo < y.lo;
    });
    return out;
}

inline std::vector<IntersectionComponent> stable_intersection(const TropicalLine& line, const PlaneCurve& c) {
    return stable_intersection(line, c, curve_graph(c), choose_perturbation(c));
}

inline Divisor section_divisor(const std::vector<IntersectionComponent>& comps) {
    Divisor d;
    for (const auto& comp : comps)
        for (const auto& chip : comp.chips) d.add(chip.point, chip.multiplicity);
    return d;
}

inline Divisor line_section(const TropicalLine& line, const PlaneCurve& c) {
    return section_divisor(stable_intersection(line, c));
}

inline bool canonical_section_check(const TropicalLine& line, const CurveClassifier& cc) {
    const auto comps = stable_intersection(line, cc.curve(), cc.gamma(), choose_perturbation(cc.curve()));
    return cc.class_of(section_divisor(comps)) == cc.class_of(cc.canonical());
}

inline bool canonical_section_check(const TropicalLine& line, const PlaneCurve& c) {
    return canonical_section_check(line, CurveClassifier(c));
}

namespace detail {

// A component of Λ∩Γ as a metric tree in Γ^w units. Boundary nodes are where Γ leaves the
// component; a function constant off the component must take one value on all of them.
struct ComponentTree {
    struct Node {
        LinePos where;
        Point2 position;
        Rational chips;
        bool boundary = false;
    };
    struct Edge {
        int a, b;  // a nearer the line vertex
        Rational len;
        int curve_edge;
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;
};

inline bool point_on_edge_interior(const PlaneCurve& c, int e, const Point2& p) {
    const auto& ed = c.edges[e];
    const Point2& a = c.vertices[ed.tail].position;
    if (sgn(Rational((p.x - a.x) * ed.direction.dy - (p.y - a.y) * ed.direction.dx)) != 0) return false;
    Rational s = param_along(a, ed.direction, p);
    return sgn(s) > 0 && (!ed.bounded() || s < ed.length);
}

inline ComponentTree component_tree(const TropicalLine& line, const PlaneCurve& c, const IntersectionComponent& comp) {
    ComponentTree tree;
    std::map<LinePos, int> index;
    auto node = [&](const LinePos& p) {
        auto it = index.find(p);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(tree.nodes.size());
        index.emplace(p, id);
        tree.nodes.push_back({p, line_point(line, p), Rational(0), false});
        return id;
    };
    std::set<std::pair<int, Rational>> tails;  // (arm, last t) of unbounded overlaps
    for (const auto& g : comp.geometry) {
        node(line_pos(g.arm < 0 ? 0 : g.arm, g.lo));
        if (!g.open_end) node(line_pos(g.arm < 0 ? 0 : g.arm, g.hi));
    }
    for (const auto& chip : comp.chips) node(chip.where);
    for (const auto& g : comp.geometry) {
        if (g.curve_edge < 0) continue;
        for (const auto& v : c.vertices) {
            Rational wx = v.position.x - line.vertex.x, wy = v.position.y - line.vertex.y;
            const Direction d = kLineArms[g.arm];
            if (sgn(cross_r(wx, wy, d.dx, d.dy)) != 0) continue;
            Rational t = param_along(line.vertex, d, v.position);
            if (t >= g.lo && (g.open_end || t <= g.hi)) node(line_pos(g.arm, t));
        }
    }
    // chain the nodes along each overlap
    for (const auto& g : comp.geometry) {
        if (g.curve_edge < 0) continue;
        std::vector<std::pair<Rational, int>> on;
        for (const auto& [p, id] : index) {
            Rational t = p.arm < 0 ? Rational(0) : p.t;
            if ((p.arm == g.arm || p.arm < 0) && t >= g.lo && (g.open_end || t <= g.hi)) on.push_back({t, id});
        }
        std::sort(on.begin(), on.end());
        const int w = c.edges[g.curve_edge].weight;
        for (std::size_t i = 0; i + 1 < on.size(); ++i)
            tree.edges.push_back({on[i].second, on[i + 1].second, Rational((on[i + 1].first - on[i].first) / w), g.curve_edge});
        if (g.open_end) tails.insert({g.arm, on.back().first});
    }
    for (const auto& chip : comp.chips) tree.nodes[index.at(chip.where)].chips += chip.multiplicity;

    std::map<Point2, int> vertex_at;
    for (std::size_t v = 0; v < c.vertices.size(); ++v) vertex_at[c.vertices[v].position] = static_cast<int>(v);
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        auto& nd = tree.nodes[i];
        std::set<Direction> inside;
        for (const auto& e : tree.edges) {
            if (e.a != static_cast<int>(i) && e.b != static_cast<int>(i)) continue;
            const int other = e.a == static_cast<int>(i) ? e.b : e.a;
            const auto& op = tree.nodes[other].where;
            const int arm = op.arm >= 0 ? op.arm : nd.where.arm;
            const Rational t_here = nd.where.arm < 0 ? Rational(0) : nd.where.t;
            const Rational t_there = op.arm < 0 ? Rational(0) : op.t;
            inside.insert(t_there > t_here ? kLineArms[arm] : -kLineArms[arm]);
        }
        const Rational t_here = nd.where.arm < 0 ? Rational(0) : nd.where.t;
        for (const auto& [arm, t] : tails)
            if (t == t_here && (nd.where.arm == arm || (nd.where.arm < 0 && sgn(t) == 0))) inside.insert(kLineArms[arm]);
        std::vector<Direction> around;
        auto vit = vertex_at.find(nd.position);
        if (vit != vertex_at.end()) {
            for (std::size_t e = 0; e < c.edges.size(); ++e) {
                if (c.edges[e].tail == vit->second || c.edges[e].head == vit->second)
                    around.push_back(c.outgoing(static_cast<int>(e), vit->second));
            }
        } else {
            for (std::size_t e = 0; e < c.edges.size(); ++e)
                if (point_on_edge_interior(c, static_cast<int>(e), nd.position)) {
                    around.push_back(c.edges[e].direction);
                    around.push_back(-c.edges[e].direction);
                }
        }
        nd.boundary = std::any_of(around.begin(), around.end(), [&](const Direction& d) { return !inside.count(d); });
    }
    return tree;
}

// Location in a component tree: a node, or a point at fraction lambda ∈ (0,1) along an edge.
struct TreeLocation {
    int node = -1;
    int edge = -1;
    Rational lambda;
};

// Values at the boundary nodes (relative to the first one) of the tree function whose divisor
// is mass·(location) − chips·share, for the location at a node.
class TreeSolver {
public:
    TreeSolver(const ComponentTree& t, const Rational& mass, const Rational& share) : t_(t), mass_(mass) {
        const int n = static_cast<int>(t.nodes.size());
        for (int i = 0; i < n; ++i)
            if (t.nodes[i].boundary) boundary_.push_back(i);
        root_ = boundary_.empty() ? 0 : boundary_.front();
        parent_.assign(n, -1);
        parent_edge_.assign(n, -1);
        std::vector<std::vector<int>> adj(n);
        for (std::size_t e = 0; e < t.edges.size(); ++e) {
            adj[t.edges[e].a].push_back(static_cast<int>(e));
            adj[t.edges[e].b].push_back(static_cast<int>(e));
        }
        order_.push_back(root_);
        std::vector<char> seen(n, 0);
        seen[root_] = 1;
        for (std::size_t i = 0; i < order_.size(); ++i) {
            int x = order_[i];
            for (int e : adj[x]) {
                int y = t.edges[e].a == x ? t.edges[e].b : t.edges[e].a;
                if (seen[y]) continue;
                seen[y] = 1;
                parent_[y] = x;
                parent_edge_[y] = e;
                order_.push_back(y);
            }
        }
        if (static_cast<int>(order_.size()) != n) throw Error(ErrorCode::DegenerateGeometry, "component is not connected");
        base_mass_.assign(n, Rational(0));
        for (int i = n - 1; i >= 0; --i) {
            int y = order_[i];
            base_mass_[y] += t.nodes[y].chips * share;
            if (parent_[y] >= 0) base_mass_[parent_[y]] += base_mass_[y];
        }
    }

    std::size_t boundary_count() const { return boundary_.size(); }
    const std::vector<int>& boundary() const { return boundary_; }

    // f at boundary nodes other than the root, with the point mass sitting at node z.
    std::vector<Rational> values_at_node(int z) const {
        const int n = static_cast<int>(t_.nodes.size());
        std::vector<char> holds(n, 0);  // z lies in the subtree of y
        for (int x = z; x >= 0; x = parent_[x]) holds[x] = 1;
        std::vector<Rational> f(n);
        for (std::size_t i = 1; i < order_.size(); ++i) {
            int y = order_[i];
            Rational slope = (holds[y] ? mass_ : Rational(0)) - base_mass_[y];
            f[y] = f[parent_[y]] + slope * t_.edges[parent_edge_[y]].len;
        }
        std::vector<Rational> out;
        for (std::size_t i = 1; i < boundary_.size(); ++i) out.push_back(f[boundary_[i]]);
        return out;
    }

    std::vector<Rational> values_at(const TreeLocation& loc) const {
        if (loc.node >= 0) return values_at_node(loc.node);
        const auto& e = t_.edges[loc.edge];
        auto fa = values_at_node(e.a), fb = values_at_node(e.b);
        for (std::size_t i = 0; i < fa.size(); ++i) fa[i] += loc.lambda * (fb[i] - fa[i]);
        return fa;
    }

    // Every location, nodes then edges (as affine families in lambda).
    std::vector<TreeLocation> locations() const {
        std::vector<TreeLocation> out;
        for (std::size_t i = 0; i < t_.nodes.size(); ++i) out.push_back({static_cast<int>(i), -1, Rational(0)});
        for (std::size_t e = 0; e < t_.edges.size(); ++e) out.push_back({-1, static_cast<int>(e), Rational(0)});
        return out;
    }

    // Values at lambda = 0 and the change up to lambda = 1.
    std::pair<std::vector<Rational>, std::vector<Rational>> affine(const TreeLocation& loc) const {
        if (loc.node >= 0) return {values_at_node(loc.node), std::vector<Rational>(boundary_.size() > 0 ? boundary_.size() - 1 : 0)};
        const auto& e = t_.edges[loc.edge];
        auto fa = values_at_node(e.a), fb = values_at_node(e.b);
        for (std::size_t i = 0; i < fa.size(); ++i) fb[i] -= fa[i];
        return {fa, fb};
    }

private:
    const ComponentTree& t_;
    Rational mass_;
    std::vector<int> boundary_;
    int root_ = 0;
    std::vector<int> parent_, parent_edge_, order_;
    std::vector<Rational> base_mass_;
};

// Points x ∈ (0,1)^k (k = number of unknowns, at most 2) with base + Σ x_i·dir_i = 0.
// Returns one representative solution if any exists.
inline std::optional<std::vector<Rational>> solve_in_open_box(const std::vector<Rational>& base,
                                                              const std::vector<std::vector<Rational>>& dirs) {
    const std::size_t k = dirs.size();
    const std::size_t m = base.size();
    // rows: dirs · x = −base
    std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(k + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) rows[i][j] = dirs[j][i];
        rows[i][k] = -base[i];
    }
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < k && r < m; ++col) {
        std::size_t p = r;
        while (p < m && sgn(rows[p][col]) == 0) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        Rational inv = 1 / rows[r][col];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || sgn(rows[i][col]) == 0) continue;
            Rational f = rows[i][col];
            for (std::size_t j = 0; j <= k; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (sgn(rows[i][k]) != 0) return std::nullopt;
    const Rational half(1, 2);
    std::vector<Rational> x(k, half);
    if (pivot_col.size() == k) {
        for (std::size_t i = 0; i < k; ++i) x[pivot_col[i]] = rows[i][k];
    } else if (pivot_col.empty()) {
        // every point works
    } else {
        // k == 2, one pivot: x_p = rhs − a·x_f with x_f free in (0,1)
        const int p = pivot_col[0];
        const int fcol = 1 - p;
        const Rational a = rows[0][fcol], rhs = rows[0][k];
        // need 0 < rhs − a·x_f < 1 and 0 < x_f < 1
        Rational lo(0), hi(1);
        if (sgn(a) == 0) {
            if (!(sgn(rhs) > 0 && rhs < 1)) return std::nullopt;
        } else {
            Rational b1 = rhs / a, b2 = (rhs - 1) / a;  // x_f bounds where x_p hits 0 and 1
            Rational l = b1 < b2 ? b1 : b2, h = b1 < b2 ? b2 : b1;
            if (l > lo) lo = l;
            if (h < hi) hi = h;
            if (!(lo < hi)) return std::nullopt;
        }
        x[fcol] = (lo + hi) / 2;
        x[p] = rhs - a * x[fcol];
    }
    for (const auto& xi : x)
        if (!(sgn(xi) > 0 && xi < 1)) return std::nullopt;
    return x;
}

}  // namespace detail

struct TangencyPoint {
    GraphPoint point;  // on Γ
    Point2 position;
};

struct BitangentWitness {
    TropicalLine line;
    std::vector<IntersectionComponent> components;
    std::vector<TangencyPoint> tangency;  // P and Q (equal allowed)
    Divisor tangency_divisor;             // 2P + 2Q
    Divisor theta;                        // P + Q
    CurveDivisorClass theta_class;
    int class_index = -1;
    int face_id = -1;
};

namespace detail {

inline TangencyPoint tree_point(const TropicalLine& line, const PlaneCurve& c, const CurveGraph& cg,
                                const ComponentTree& t, const TreeLocation& loc) {
    if (loc.node >= 0) {
        const auto& nd = t.nodes[loc.node];
        // prefer an overlapping curve edge, else any curve edge through the point
        for (const auto& e : t.edges)
            if (e.a == loc.node || e.b == loc.node) {
                Rational s = param_along(c.vertices[c.edges[e.curve_edge].tail].position, c.edges[e.curve_edge].direction, nd.position);
                return {curve_point(c, cg, e.curve_edge, s), nd.position};
            }
        for (std::size_t v = 0; v < c.vertices.size(); ++v)
            if (c.vertices[v].position == nd.position) return {GraphPoint::vertex(static_cast<int>(v)), nd.position};
        for (std::size_t e = 0; e < c.edges.size(); ++e)
            if (point_on_edge_interior(c, static_cast<int>(e), nd.position)) {
                Rational s = param_along(c.vertices[c.edges[e].tail].position, c.edges[e].direction, nd.position);
                return {curve_point(c, cg, static_cast<int>(e), s), nd.position};
            }
        throw Error(ErrorCode::DegenerateGeometry, "tangency point is not on the curve");
    }
    const auto& e = t.edges[loc.edge];
    const auto& pa = t.nodes[e.a].where;
    const auto& pb = t.nodes[e.b].where;
    const int arm = pb.arm >= 0 ? pb.arm : pa.arm;
    const Rational ta = pa.arm < 0 ? Rational(0) : pa.t;
    const Rational tb = pb.arm < 0 ? Rational(0) : pb.t;
    const Point2 pos = line_point(line, line_pos(arm, Rational(ta + loc.lambda * (tb - ta))));
    const auto& ce = c.edges[e.curve_edge];
    return {curve_point(c, cg, e.curve_edge, param_along(c.vertices[ce.tail].position, ce.direction, pos)), pos};
}

// Locations P in the component with 2P ~ chips by a function constant off the component.
inline std::vector<TreeLocation> double_points(const ComponentTree& t) {
    TreeSolver solver(t, Rational(2), Rational(1));
    std::vector<TreeLocation> out;
    if (solver.boundary_count() <= 1) {
        out.push_back({solver.boundary().empty() ? 0 : solver.boundary().front(), -1, Rational(0)});
        return out;
    }
    for (auto loc : solver.locations()) {
        auto [base, dir] = solver.affine(loc);
        if (loc.node >= 0) {
            if (std::all_of(base.begin(), base.end(), [](const Rational& x) { return sgn(x) == 0; })) out.push_back(loc);
            continue;
        }
        auto sol = solve_in_open_box(base, {dir});
        if (sol) {
            loc.lambda = (*sol)[0];
            out.push_back(loc);
        }
    }
    return out;
}

// Pairs (P, Q) in the component with 2P + 2Q ~ chips by a function constant off the component.
inline std::vector<std::pair<TreeLocation, TreeLocation>> double_pairs(const ComponentTree& t) {
    TreeSolver solver(t, Rational(2), rat(1, 2));
    std::vector<std::pair<TreeLocation, TreeLocation>> out;
    if (solver.boundary_count() <= 1) {
        TreeLocation b{solver.boundary().empty() ? 0 : solver.boundary().front(), -1, Rational(0)};
        out.push_back({b, b});
        return out;
    }
    const auto locs = solver.locations();
    for (std::size_t i = 0; i < locs.size(); ++i)
        for (std::size_t j = i; j < locs.size(); ++j) {
            auto [b1, d1] = solver.affine(locs[i]);
            auto [b2, d2] = solver.affine(locs[j]);
            for (std::size_t x = 0; x < b1.size(); ++x) b1[x] += b2[x];
            std::vector<std::vector<Rational>> dirs;
            if (locs[i].node < 0) dirs.push_back(d1);
            if (locs[j].node < 0) dirs.push_back(d2);
            auto sol = solve_in_open_box(b1, dirs);
            if (!sol) continue;
            TreeLocation p = locs[i], q = locs[j];
            std::size_t k = 0;
            if (p.node < 0) p.lambda = (*sol)[k++];
            if (q.node < 0) q.lambda = (*sol)[k++];
            out.push_back({p, q});
        }
    return out;
}

}  // namespace detail

struct MultiplicityGate {
    int quadruple = -1;             // component index with multiplicity ≥ 4
    std::vector<int> doubles;       // component indices with multiplicity ≥ 2
    bool passes() const { return quadruple >= 0 || doubles.size() >= 2; }
};

inline MultiplicityGate multiplicity_gate(const std::vector<IntersectionComponent>& comps) {
    MultiplicityGate g;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].multiplicity >= 4 && g.quadruple < 0) g.quadruple = static_cast<int>(i);
        if (comps[i].multiplicity >= 2) g.doubles.push_back(static_cast<int>(i));
    }
    return g;
}

// Every way the line realises 2P + 2Q inside its intersection, one witness per distinct theta
// class. Empty when the line is not bitangent.
inline std::vector<BitangentWitness> bitangent_witnesses(const TropicalLine& line, const CurveClassifier& cc,
                                                         const std::vector<IntersectionComponent>& comps) {
    const auto& c = cc.curve();
    const auto& cg = cc.gamma();
    std::vector<std::vector<TangencyPoint>> choices;  // candidate {P, Q}
    const auto gate = multiplicity_gate(comps);
    if (gate.quadruple >= 0) {
        auto tree = detail::component_tree(line, c, comps[gate.quadruple]);
        for (const auto& [p, q] : detail::double_pairs(tree))
            choices.push_back({detail::tree_point(line, c, cg, tree, p), detail::tree_point(line, c, cg, tree, q)});
    } else if (gate.doubles.size() >= 2) {
        auto t1 = detail::component_tree(line, c, comps[gate.doubles[0]]);
        auto t2 = detail::component_tree(line, c, comps[gate.doubles[1]]);
        auto s1 = detail::double_points(t1);
        auto s2 = detail::double_points(t2);
        for (const auto& p : s1)
            for (const auto& q : s2)
                choices.push_back({detail::tree_point(line, c, cg, t1, p), detail::tree_point(line, c, cg, t2, q)});
    }
    std::vector<BitangentWitness> out;
    for (auto& pq : choices) {
        BitangentWitness w;
        w.line = line;
        w.components = comps;
        w.tangency = pq;
        for (const auto& tp : pq) {
            w.theta.add(tp.point, 1);
            w.tangency_divisor.add(tp.point, 2);
        }
        w.theta_class = cc.class_of(w.theta);
        bool seen = std::any_of(out.begin(), out.end(), [&](const BitangentWitness& o) { return o.theta_class == w.theta_class; });
        if (!seen) out.push_back(std::move(w));
    }
    return out;
}

inline std::optional<BitangentWitness> is_bitangent(const TropicalLine& line, const CurveClassifier& cc) {
    auto comps = stable_intersection(line, cc.curve(), cc.gamma(), choose_perturbation(cc.curve()));
    auto ws = bitangent_witnesses(line, cc, comps);
    if (ws.empty()) return std::nullopt;
    return ws.front();
}

inline std::optional<BitangentWitness> is_bitangent(const TropicalLine& line, const PlaneCurve& c) {
    return is_bitangent(line, CurveClassifier(c));
}

inline int classify_bitangent(const BitangentWitness& w, const ThetaClassTable& table) {
    int i = table.find(w.theta_class);
    if (i < 0) throw Error(ErrorCode::DegenerateGeometry, "bitangent class is not a theta characteristic class");
    return i;
}

// a·X + b·Y = c in the plane of line vertices; (a, b) primitive with the first non-zero entry positive.
struct ParamLine {
    std::int64_t a = 0, b = 0;
    Rational c;

    Rational eval(const Point2& p) const { return Rational(a * p.x + b * p.y - c); }

    friend bool operator==(const ParamLine& x, const ParamLine& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
    friend bool operator<(const ParamLine& x, const ParamLine& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    }
};

inline ParamLine make_param_line(std::int64_t a, std::int64_t b, const Rational& c) {
    std::int64_t g = gcd64(a, b);
    a /= g;
    b /= g;
    Rational cc = c / g;
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
        cc = -cc;
    }
    return {a, b, cc};
}

struct ArrangementFace {
    int id = 0;
    int dimension = 0;
    Point2 sample;
};

struct Arrangement {
    std::vector<ParamLine> lines;
    std::vector<ArrangementFace> faces;
};

inline Arrangement arrangement_of(std::vector<ParamLine> lines) {
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    Arrangement arr;
    arr.lines = lines;
    const std::size_t n = lines.size();
    auto add = [&](int dim, Point2 p) {
        arr.faces.push_back({static_cast<int>(arr.faces.size()), dim, std::move(p)});
    };
    if (n == 0) {
        add(2, {Rational(0), Rational(0)});
        return arr;
    }
    // vertices on each line, ordered by position along the line direction (−b, a)
    std::vector<std::vector<std::pair<Rational, Point2>>> on(n);
    std::set<Point2> vertices;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& p = lines[i];
            const auto& q = lines[j];
            const std::int64_t det = p.a * q.b - p.b * q.a;
            if (det == 0) continue;
            Point2 x{Rational((p.c * q.b - q.c * p.b) / det), Rational((p.a * q.c - q.a * p.c) / det)};
            vertices.insert(x);
            on[i].push_back({Rational(-p.b * x.x + p.a * x.y), x});
            on[j].push_back({Rational(-q.b * x.x + q.a * x.y), x});
        }
    for (const auto& v : vertices) add(0, v);
    std::vector<std::pair<std::size_t, Point2>> edge_samples;
    for (std::size_t i = 0; i < n; ++i) {
        auto& pts = on[i];
        std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        pts.erase(std::unique(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first == y.first; }), pts.end());
        const auto& L = lines[i];
        const Point2 dir{Rational(-L.b), Rational(L.a)};
        auto shift = [&](const Point2& p, int sign) {
            return Point2{Rational(p.x + sign * dir.x), Rational(p.y + sign * dir.y)};
        };
        if (pts.empty()) {
            Point2 base = L.b != 0 ? Point2{Rational(0), Rational(L.c / L.b)} : Point2{Rational(L.c / L.a), Rational(0)};
            edge_samples.push_back({i, base});
            continue;
        }
        edge_samples.push_back({i, shift(pts.front().second, -1)});
        for (std::size_t k = 0; k + 1 < pts.size(); ++k)
            edge_samples.push_back({i, {Rational((pts[k].second.x + pts[k + 1].second.x) / 2),
                                        Rational((pts[k].second.y + pts[k + 1].second.y) / 2)}});
        edge_samples.push_back({i, shift(pts.back().second, 1)});
    }
    for (const auto& [i, p] : edge_samples) add(1, p);
    std::set<std::vector<signed char>> seen;
    for (const auto& [i, m] : edge_samples) {
        const auto& L = lines[i];
        bool have = false;
        Rational delta;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const auto& M = lines[j];
            std::int64_t den = M.a * L.a + M.b * L.b;
            if (den == 0) continue;
            Rational t = abs_value(Rational(-M.eval(m) / den));
            if (!have || t < delta) delta = t;
            have = true;
        }
        if (!have) delta = 2;
        for (int sign : {-1, 1}) {
            Rational step = sign * delta / 2;
            Point2 s{Rational(m.x + step * L.a), Rational(m.y + step * L.b)};
            std::vector<signed char> key(n);
            for (std::size_t j = 0; j < n; ++j) key[j] = static_cast<signed char>(sgn(lines[j].eval(s)));
            if (seen.insert(key).second) add(2, s);
        }
    }
    return arr;
}

inline std::vector<ParamLine> critical_lines(const PlaneCurve& c) {
    std::vector<ParamLine> lines;
    for (const auto& v : c.vertices) {
        lines.push_back(make_param_line(1, 0, v.position.x));
        lines.push_back(make_param_line(0, 1, v.position.y));
        lines.push_back(make_param_line(-1, 1, Rational(v.position.y - v.position.x)));
    }
    for (const auto& e : c.edges) {
        const auto& a = c.vertices[e.tail].position;
        lines.push_back(make_param_line(e.direction.dy, -e.direction.dx,
                                        Rational(e.direction.dy * a.x - e.direction.dx * a.y)));
    }
    return lines;
}

inline Arrangement critical_arrangement(const PlaneCurve& c) { return arrangement_of(critical_lines(c)); }

struct BitangentClass {
    int table_index = -1;
    int multiplicity = 0;
    std::vector<int> faces;
    BitangentWitness representative;
};

struct BitangentEnumeration {
    std::vector<BitangentClass> classes;  // ordered by table index
    std::vector<int> missing;             // effective table classes without a witness
    int faces_tested = 0;
    int bitangent_faces = 0;
    int gate_only_faces = 0;  // multiplicity pattern admits 2+2 but no tangency pair exists
};

inline BitangentEnumeration enumerate_bitangents(const CurveClassifier& cc, const ThetaClassTable& table,
                                                 const Arrangement& arr) {
    const auto& c = cc.curve();
    const Direction v = choose_perturbation(c);
    BitangentEnumeration out;
    std::map<int, BitangentClass> found;
    for (const auto& face : arr.faces) {
        ++out.faces_tested;
        TropicalLine line{face.sample};
        auto comps = stable_intersection(line, c, cc.gamma(), v);
        auto ws = bitangent_witnesses(line, cc, comps);
        if (ws.empty()) {
            if (multiplicity_gate(comps).passes()) ++out.gate_only_faces;
            continue;
        }
        ++out.bitangent_faces;
        for (auto& w : ws) {
            w.face_id = face.id;
            w.class_index = classify_bitangent(w, table);
            auto& bc = found[w.class_index];
            if (bc.faces.empty()) {
                bc.table_index = w.class_index;
                bc.multiplicity = table.classes[w.class_index].multiplicity;
                bc.representative = w;
            }
            bc.faces.push_back(face.id);
        }
    }
    for (auto& [i, bc] : found) out.classes.push_back(std::move(bc));
    for (std::size_t i = 0; i < table.classes.size(); ++i)
        if (table.classes[i].multiplicity > 0 && !found.count(static_cast<int>(i))) out.missing.push_back(static_cast<int>(i));
    return out;
}

inline BitangentEnumeration enumerate_bitangents(const CurveClassifier& cc) {
    return enumerate_bitangents(cc, theta_class_table(cc), critical_arrangement(cc.curve()));
}

inline BitangentEnumeration enumerate_bitangents(const PlaneCurve& c) { return enumerate_bitangents(CurveClassifier(c)); }

struct MainTheoremReport {
    int g = 0;
    int g_sigma = 0;
    std::vector<int> multiplicities;  // realized classes in table order
    bool passed = false;
    std::vector<std::string> failures;
    std::string summary;
};

inline MainTheoremReport verify_main_theorem(const CurveClassifier& cc, const ThetaClassTable& table,
                                             const BitangentEnumeration& en) {
    MainTheoremReport r;
    r.g = cc.jacobian_dimension();
    r.g_sigma = genus(cc.curve()).g_sigma;
    if (cc.curve().degree != 4) r.failures.push_back("curve is not a quartic");
    for (const auto& v : table_violations(table, r.g, r.g_sigma)) r.failures.push_back("theta table: " + v);
    for (const auto& bc : en.classes) r.multiplicities.push_back(bc.multiplicity);
    for (int i : en.missing) r.failures.push_back("effective theta class " + std::to_string(i) + " has no bitangent");
    // the class of multiplicity 2^{3−g} − 1 carries no bitangent when that number is 0
    const int full = 1 << (3 - r.g);
    const int expected = r.g < 3 ? 1 << r.g : 7;
    if (static_cast<int>(en.classes.size()) != expected)
        r.failures.push_back("expected " + std::to_string(expected) + " bitangent classes, found " + std::to_string(en.classes.size()));
    std::vector<int> want(expected, full);
    if (r.g < 3) want[0] = full - 1;
    std::vector<int> got = r.multiplicities;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) r.failures.push_back("multiplicities do not follow the 2^(3-g) pattern");
    int total = 0;
    for (int m : got) total += m;
    if (total != 7) r.failures.push_back("multiplicities sum to " + std::to_string(total) + ", not 7");
    r.passed = r.failures.empty();
    std::map<int, int> groups;
    for (int m : got) ++groups[m];
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        if (!r.summary.empty()) r.summary += " + ";
        r.summary += std::to_string(it->second) + (it->second == 1 ? " class" : " classes") + " × " + std::to_string(it->first);
    }
    return r;
}

inline MainTheoremReport verify_main_theorem(const PlaneCurve& c) {
    CurveClassifier cc(c);
    auto table = theta_class_table(cc);
    return verify_main_theorem(cc, table, enumerate_bitangents(cc, table, critical_arrangement(c)));
}

}  // namespace tropbt
