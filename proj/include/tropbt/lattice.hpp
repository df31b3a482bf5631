#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace tropbt {

struct LatticePoint {
    std::int64_t x = 0, y = 0;

    auto operator<=>(const LatticePoint&) const = default;
};

inline std::int64_t orient(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Number of lattice steps on the segment a-b (its lattice length).
inline std::int64_t lattice_length(const LatticePoint& a, const LatticePoint& b) {
    return gcd64(b.x - a.x, b.y - a.y);
}

// Strictly convex counterclockwise lattice polygon of positive area.
class LatticePolygon {
public:
    LatticePolygon() = default;

    explicit LatticePolygon(std::vector<LatticePoint> vertices) : vertices_(std::move(vertices)) {
        const std::size_t n = vertices_.size();
        if (n < 3) throw Error(ErrorCode::DegenerateGeometry, "degenerate polygon: fewer than 3 vertices");
        for (std::size_t i = 0; i < n; ++i) {
            if (orient(vertices_[i], vertices_[(i + 1) % n], vertices_[(i + 2) % n]) <= 0)
                throw Error(ErrorCode::DegenerateGeometry, "degenerate polygon: not strictly convex counterclockwise");
        }
        // a strictly convex turn at every corner still allows winding twice; the shoelace sum rules it out
        if (twice_area() <= 0) throw Error(ErrorCode::DegenerateGeometry, "degenerate polygon: zero area");
        std::set<LatticePoint> distinct(vertices_.begin(), vertices_.end());
        if (distinct.size() != n) throw Error(ErrorCode::DegenerateGeometry, "degenerate polygon: repeated vertex");
    }

    const std::vector<LatticePoint>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const LatticePoint& operator[](std::size_t i) const { return vertices_[i]; }

    std::int64_t twice_area() const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            const auto& p = vertices_[i];
            const auto& q = vertices_[(i + 1) % vertices_.size()];
            s += p.x * q.y - p.y * q.x;
        }
        return s;
    }

    // 1 strictly inside, 0 on the boundary, -1 outside.
    int locate(const LatticePoint& p) const {
        bool on_edge = false;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            std::int64_t o = orient(vertices_[i], vertices_[(i + 1) % vertices_.size()], p);
            if (o < 0) return -1;
            if (o == 0) on_edge = true;
        }
        return on_edge ? 0 : 1;
    }

    bool contains(const LatticePolygon& other) const {
        return std::all_of(other.vertices_.begin(), other.vertices_.end(),
                           [&](const LatticePoint& p) { return locate(p) >= 0; });
    }

    friend bool operator==(const LatticePolygon& a, const LatticePolygon& b) { return a.vertices_ == b.vertices_; }
    friend bool operator<(const LatticePolygon& a, const LatticePolygon& b) { return a.vertices_ < b.vertices_; }

private:
    std::vector<LatticePoint> vertices_;
};

// Strict convex hull, counterclockwise, starting at the lexicographically smallest point.
inline std::vector<LatticePoint> convex_hull_points(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<LatticePoint> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

inline LatticePolygon convex_hull(const std::vector<LatticePoint>& pts) {
    return LatticePolygon(convex_hull_points(pts));
}

struct LatticePointSplit {
    std::vector<LatticePoint> boundary;
    std::vector<LatticePoint> interior;
};

inline LatticePointSplit lattice_points(const LatticePolygon& poly) {
    if (poly.size() < 3 || poly.twice_area() <= 0) throw Error(ErrorCode::DegenerateGeometry, "degenerate polygon");
    std::int64_t x0 = poly[0].x, x1 = poly[0].x, y0 = poly[0].y, y1 = poly[0].y;
    for (const auto& v : poly.vertices()) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
    }
    LatticePointSplit out;
    for (std::int64_t x = x0; x <= x1; ++x)
        for (std::int64_t y = y0; y <= y1; ++y) {
            int where = poly.locate({x, y});
            if (where == 0) out.boundary.push_back({x, y});
            else if (where == 1) out.interior.push_back({x, y});
        }
    return out;
}

inline std::vector<LatticePoint> interior_lattice_points(const LatticePolygon& poly) {
    return lattice_points(poly).interior;
}

inline Rational pick_area(const LatticePolygon& poly) {
    auto split = lattice_points(poly);
    return Rational(rat(static_cast<long>(split.boundary.size()), 2) + static_cast<long>(split.interior.size()) - 1);
}

inline Rational shoelace_area(const LatticePolygon& poly) { return rat(poly.twice_area(), 2); }

struct Lift {
    std::map<LatticePoint, Rational> value;

    std::vector<LatticePoint> support() const {
        std::vector<LatticePoint> s;
        for (const auto& [p, v] : value) s.push_back(p);
        return s;
    }
    bool operator==(const Lift& o) const { return value == o.value; }
};

// Affine function z = c0 + c1·x + c2·y.
struct AffineForm {
    Rational c0, c1, c2;

    Rational operator()(const LatticePoint& p) const { return Rational(c0 + c1 * p.x + c2 * p.y); }
};

struct InteriorEdge {
    LatticePoint a, b;
    int left_face = -1, right_face = -1;  // sides as seen walking from a to b
};

struct BoundaryEdge {
    LatticePoint a, b;  // counterclockwise along the hull
    int face = -1;
};

struct RegularSubdivision {
    LatticePolygon hull;
    std::vector<LatticePolygon> faces;
    std::vector<AffineForm> planes;  // lifted plane of each face
    std::vector<InteriorEdge> interior_edges;
    std::vector<BoundaryEdge> boundary_edges;
};

namespace detail {

// Plane through three lifted points with non-collinear projections.
inline AffineForm plane_through(const LatticePoint& p, const Rational& zp, const LatticePoint& q, const Rational& zq,
                                const LatticePoint& r, const Rational& zr) {
    const std::int64_t ux = q.x - p.x, uy = q.y - p.y, vx = r.x - p.x, vy = r.y - p.y;
    const std::int64_t det = ux * vy - uy * vx;
    Rational dzu = zq - zp, dzv = zr - zp;
    AffineForm f;
    f.c1 = (dzu * vy - dzv * uy) / det;
    f.c2 = (dzv * ux - dzu * vx) / det;
    f.c0 = zp - f.c1 * p.x - f.c2 * p.y;
    return f;
}

class LowerHull {
public:
    explicit LowerHull(const Lift& lift) : lift_(lift), pts_(lift.support()) {}

    const Rational& z(const LatticePoint& p) const { return lift_.value.at(p); }

    // Face lying to the left of the directed edge a->b, where a-b is an edge of the lower hull.
    std::pair<LatticePolygon, AffineForm> face_left_of(const LatticePoint& a, const LatticePoint& b) const {
        const LatticePoint* best = nullptr;
        AffineForm plane;
        for (const auto& r : pts_) {
            if (orient(a, b, r) <= 0) continue;
            if (best == nullptr || sgn(Rational(z(r) - plane(r))) < 0) {
                best = &r;
                plane = plane_through(a, z(a), b, z(b), r, z(r));
            }
        }
        if (best == nullptr) throw Error(ErrorCode::DegenerateGeometry, "no face beyond a hull edge");
        std::vector<LatticePoint> on;
        for (const auto& r : pts_)
            if (z(r) == plane(r)) on.push_back(r);
        return {convex_hull(on), plane};
    }

private:
    const Lift& lift_;
    std::vector<LatticePoint> pts_;
};

}  // namespace detail

// Faces are projections of the maximal lower faces of the lifted support; they are found by
// pivoting a supporting plane across each edge, starting from the hull boundary.
inline RegularSubdivision regular_subdivision(const Lift& lift) {
    if (lift.value.empty()) throw Error(ErrorCode::DegenerateGeometry, "empty lift");
    auto pts = lift.support();
    auto hull_pts = convex_hull_points(pts);
    if (hull_pts.size() < 3) throw Error(ErrorCode::DegenerateGeometry, "support is collinear");
    RegularSubdivision sub;
    sub.hull = LatticePolygon(hull_pts);
    detail::LowerHull lower(lift);

    // first lower edge on the hull side starting at hull_pts[0]: the 1D lower hull of that side
    const LatticePoint h0 = hull_pts[0], h1 = hull_pts[1];
    LatticePoint start = h1;
    {
        Rational best_slope;
        bool have = false;
        for (const auto& p : pts) {
            if (p == h0 || orient(h0, h1, p) != 0) continue;
            if ((p.x - h0.x) * (h1.x - h0.x) + (p.y - h0.y) * (h1.y - h0.y) <= 0) continue;
            Rational slope = (lower.z(p) - lower.z(h0)) / lattice_length(h0, p);
            if (!have || slope < best_slope || (slope == best_slope && lattice_length(h0, p) > lattice_length(h0, start))) {
                best_slope = slope;
                start = p;
                have = true;
            }
        }
    }

    std::map<std::vector<LatticePoint>, int> index;
    std::vector<LatticePolygon> found;
    std::vector<AffineForm> planes;
    std::deque<int> queue;
    auto add_face = [&](const LatticePolygon& f, const AffineForm& plane) {
        auto key = f.vertices();
        std::sort(key.begin(), key.end());
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(found.size());
        index.emplace(key, id);
        found.push_back(f);
        planes.push_back(plane);
        queue.push_back(id);
        return id;
    };
    {
        auto [f, plane] = lower.face_left_of(h0, start);
        add_face(f, plane);
    }
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        const LatticePolygon face = found[id];
        for (std::size_t i = 0; i < face.size(); ++i) {
            const auto& a = face[i];
            const auto& b = face[(i + 1) % face.size()];
            bool beyond = std::any_of(pts.begin(), pts.end(), [&](const LatticePoint& r) { return orient(a, b, r) < 0; });
            if (!beyond) continue;
            auto [g, plane] = lower.face_left_of(b, a);
            add_face(g, plane);
        }
    }

    // canonical face order, then edges
    std::vector<int> order(found.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return found[x] < found[y]; });
    for (int id : order) {
        sub.faces.push_back(found[id]);
        sub.planes.push_back(planes[id]);
    }
    std::map<std::pair<LatticePoint, LatticePoint>, int> left_of;
    for (std::size_t f = 0; f < sub.faces.size(); ++f) {
        const auto& face = sub.faces[f];
        for (std::size_t i = 0; i < face.size(); ++i)
            left_of[{face[i], face[(i + 1) % face.size()]}] = static_cast<int>(f);
    }
    for (const auto& [edge, f] : left_of) {
        const auto& [a, b] = edge;
        auto twin = left_of.find({b, a});
        if (twin == left_of.end()) {
            sub.boundary_edges.push_back({a, b, f});
        } else if (a < b) {
            sub.interior_edges.push_back({a, b, f, twin->second});
        }
    }
    return sub;
}

}  // namespace tropbt
