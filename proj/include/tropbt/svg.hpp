#pragma once

#include "bitangent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace tropbt {

struct SvgStyle {
    double size = 640;      // longest side of the drawing in pixels
    double margin = 0.15;   // fraction of the extent added on every side
    double ray_extent = 0.35;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Viewport {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    double scale = 1, pad = 0;

    double px(double x) const { return (x - min_x + pad) * scale; }
    double py(double y) const { return (max_y - y + pad) * scale; }  // y grows upwards in the plane
};

}  // namespace detail

// Curve edges with weight labels (weights above 1), weighted vertices as labelled dots, and one
// glyph per bitangent witness: the three arms of the line and its tangency points.
inline std::string render_svg(const PlaneCurve& c, const std::vector<BitangentWitness>& witnesses, const SvgStyle& style = {}) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : c.vertices) pts.push_back({v.position.x.get_d(), v.position.y.get_d()});
    for (const auto& w : witnesses) {
        pts.push_back({w.line.vertex.x.get_d(), w.line.vertex.y.get_d()});
        for (const auto& t : w.tangency) pts.push_back({t.position.x.get_d(), t.position.y.get_d()});
    }
    if (pts.empty()) pts.push_back({0, 0});
    detail::Viewport vp;
    vp.min_x = vp.max_x = pts[0].first;
    vp.min_y = vp.max_y = pts[0].second;
    for (const auto& [x, y] : pts) {
        vp.min_x = std::min(vp.min_x, x);
        vp.max_x = std::max(vp.max_x, x);
        vp.min_y = std::min(vp.min_y, y);
        vp.max_y = std::max(vp.max_y, y);
    }
    const double extent = std::max({vp.max_x - vp.min_x, vp.max_y - vp.min_y, 1.0});
    const double ray_len = extent * style.ray_extent;
    vp.pad = extent * style.margin + ray_len;
    const double w_units = vp.max_x - vp.min_x + 2 * vp.pad, h_units = vp.max_y - vp.min_y + 2 * vp.pad;
    vp.scale = style.size / std::max(w_units, h_units);
    const double width = w_units * vp.scale, height = h_units * vp.scale;
    const double font = std::max(10.0, style.size / 48);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << detail::fmt(width) << "\" height=\""
        << detail::fmt(height) << "\" viewBox=\"0 0 " << detail::fmt(width) << " " << detail::fmt(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    auto seg = [&](const char* cls, double x1, double y1, double x2, double y2, const char* stroke, double sw, int weight) {
        out << "<line class=\"" << cls << "\"";
        if (weight > 0) out << " data-weight=\"" << weight << "\"";
        out << " x1=\"" << detail::fmt(vp.px(x1)) << "\" y1=\"" << detail::fmt(vp.py(y1)) << "\" x2=\""
            << detail::fmt(vp.px(x2)) << "\" y2=\"" << detail::fmt(vp.py(y2)) << "\" stroke=\"" << stroke
            << "\" stroke-width=\"" << detail::fmt(sw) << "\"/>\n";
    };
    auto label = [&](const char* cls, double x, double y, const std::string& text, const char* fill) {
        out << "<text class=\"" << cls << "\" x=\"" << detail::fmt(x) << "\" y=\"" << detail::fmt(y) << "\" font-size=\""
            << detail::fmt(font) << "\" fill=\"" << fill << "\">" << text << "</text>\n";
    };

    out << "<g class=\"curve\">\n";
    for (const auto& e : c.edges) {
        const auto& a = c.vertices[e.tail].position;
        double x1 = a.x.get_d(), y1 = a.y.get_d(), x2, y2;
        const char* cls = "edge";
        if (e.bounded()) {
            x2 = c.vertices[e.head].position.x.get_d();
            y2 = c.vertices[e.head].position.y.get_d();
        } else {
            const double n = std::hypot(double(e.direction.dx), double(e.direction.dy));
            x2 = x1 + ray_len * e.direction.dx / n;
            y2 = y1 + ray_len * e.direction.dy / n;
            cls = "ray";
        }
        seg(cls, x1, y1, x2, y2, "black", 1.5 + 0.75 * (e.weight - 1), e.weight);
        if (e.weight > 1) {
            // label beside the midpoint, offset along the left normal
            const double dx = vp.px(x2) - vp.px(x1), dy = vp.py(y2) - vp.py(y1);
            const double n = std::max(std::hypot(dx, dy), 1e-9);
            label("edge-weight", (vp.px(x1) + vp.px(x2)) / 2 + 0.8 * font * dy / n, (vp.py(y1) + vp.py(y2)) / 2 - 0.8 * font * dx / n,
                  std::to_string(e.weight), "black");
        }
    }
    for (const auto& v : c.vertices) {
        if (v.weight == 0) continue;
        const double x = vp.px(v.position.x.get_d()), y = vp.py(v.position.y.get_d());
        out << "<circle class=\"vertex\" data-weight=\"" << v.weight << "\" cx=\"" << detail::fmt(x) << "\" cy=\""
            << detail::fmt(y) << "\" r=\"" << detail::fmt(font * 0.4) << "\" fill=\"black\"/>\n";
        label("vertex-weight", x + 0.5 * font, y - 0.5 * font, std::to_string(v.weight), "black");
    }
    out << "</g>\n";

    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        const auto& w = witnesses[i];
        out << "<g class=\"bitangent\" data-class=\"" << w.class_index << "\">\n";
        const double x0 = w.line.vertex.x.get_d(), y0 = w.line.vertex.y.get_d();
        for (const auto& arm : kLineArms) {
            const double n = std::hypot(double(arm.dx), double(arm.dy));
            seg("line-arm", x0, y0, x0 + 2 * ray_len * arm.dx / n, y0 + 2 * ray_len * arm.dy / n, "#c0392b", 1.0, 0);
        }
        for (const auto& t : w.tangency)
            out << "<circle class=\"tangency\" cx=\"" << detail::fmt(vp.px(t.position.x.get_d())) << "\" cy=\""
                << detail::fmt(vp.py(t.position.y.get_d())) << "\" r=\"" << detail::fmt(font * 0.3)
                << "\" fill=\"none\" stroke=\"#c0392b\"/>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace tropbt
