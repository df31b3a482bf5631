#include "oracles.hpp"

#include <gtest/gtest.h>

#include <regex>

using namespace tropbt;

namespace {

struct Element {
    std::string tag;
    std::map<std::string, std::string> attr;
    std::string text;
};

std::vector<Element> elements(const std::string& svg) {
    std::vector<Element> out;
    const std::regex tag_re(R"(<(line|circle|text|g|svg)\s([^>]*?)/?>([^<]*))");
    const std::regex attr_re(R"re(([a-zA-Z0-9:_-]+)="([^"]*)")re");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag_re); it != std::sregex_iterator(); ++it) {
        Element e{(*it)[1], {}, (*it)[3]};
        const std::string attrs = (*it)[2];
        for (auto a = std::sregex_iterator(attrs.begin(), attrs.end(), attr_re); a != std::sregex_iterator(); ++a)
            e.attr[(*a)[1]] = (*a)[2];
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Element> with_class(const std::vector<Element>& es, const std::string& cls) {
    std::vector<Element> out;
    for (const auto& e : es)
        if (e.attr.count("class") && e.attr.at("class") == cls) out.push_back(e);
    return out;
}

std::vector<BitangentWitness> representatives(const PlaneCurve& c) {
    std::vector<BitangentWitness> ws;
    for (const auto& cls : enumerate_bitangents(c).classes) ws.push_back(cls.representative);
    return ws;
}

double num(const Element& e, const char* key) { return std::stod(e.attr.at(key)); }

}  // namespace

TEST(Svg, FlatQuarticIsThreeRaysAndOneDot) {
    const auto c = curve_from_polynomial(fixtures::flat_quartic());
    const auto es = elements(render_svg(c, {}));
    EXPECT_EQ(with_class(es, "ray").size(), 3u);
    EXPECT_EQ(with_class(es, "edge").size(), 0u);
    const auto dots = with_class(es, "vertex");
    ASSERT_EQ(dots.size(), 1u);
    EXPECT_EQ(dots[0].attr.at("data-weight"), "3");
    const auto labels = with_class(es, "vertex-weight");
    ASSERT_EQ(labels.size(), 1u);
    EXPECT_EQ(labels[0].text, "3");
}

TEST(Svg, SmoothFixtureWithSevenLineGlyphs) {
    const auto c = curve_from_polynomial(fixtures::smooth_quartic());
    const auto ws = representatives(c);
    ASSERT_EQ(ws.size(), 7u);
    const auto svg = render_svg(c, ws);
    const auto es = elements(svg);
    EXPECT_EQ(with_class(es, "bitangent").size(), 7u);
    EXPECT_EQ(with_class(es, "line-arm").size(), 21u);
    EXPECT_EQ(with_class(es, "tangency").size(), 14u);
    EXPECT_EQ(with_class(es, "edge").size(), 18u);
    EXPECT_EQ(with_class(es, "ray").size(), 12u);
    EXPECT_TRUE(with_class(es, "vertex").empty());
    EXPECT_EQ(svg, render_svg(c, ws));
}

TEST(Svg, OneCycleFixtureLabels) {
    const auto c = curve_from_polynomial(fixtures::one_cycle_quartic());
    const auto es = elements(render_svg(c, representatives(c)));
    std::multiset<std::string> edge_labels, vertex_labels;
    for (const auto& e : with_class(es, "edge-weight")) edge_labels.insert(e.text);
    for (const auto& e : with_class(es, "vertex-weight")) vertex_labels.insert(e.text);
    EXPECT_TRUE(edge_labels.count("2"));
    EXPECT_EQ(vertex_labels, (std::multiset<std::string>{"1"}));
    int doubled = 0;
    for (const auto& e : with_class(es, "edge")) doubled += e.attr.at("data-weight") == "2";
    EXPECT_EQ(doubled, 1);
}

// Edges are drawn parallel to their directions (with y flipped) and everything fits the viewport.
TEST(Svg, GeometryMatchesCurve) {
    const auto c = curve_from_polynomial(fixtures::random_smooth_quartic(4));
    const auto es = elements(render_svg(c, representatives(c)));
    const auto root = es.front();
    ASSERT_EQ(root.tag, "svg");
    const double w = std::stod(root.attr.at("width")), h = std::stod(root.attr.at("height"));
    const auto edges = with_class(es, "edge"), rays = with_class(es, "ray");
    ASSERT_EQ(edges.size() + rays.size(), c.edges.size());
    // drawn in curve edge order, split by kind
    std::size_t next_edge = 0, next_ray = 0;
    for (const auto& e : c.edges) {
        const auto& el = e.bounded() ? edges[next_edge++] : rays[next_ray++];
        const double dx = num(el, "x2") - num(el, "x1"), dy = num(el, "y2") - num(el, "y1");
        EXPECT_NEAR(dx * -e.direction.dy - dy * e.direction.dx, 0.0, 0.01 * (std::abs(dx) + std::abs(dy)));
        EXPECT_GT(dx * e.direction.dx - dy * e.direction.dy, 0.0);
        for (const char* k : {"x1", "x2"}) EXPECT_TRUE(num(el, k) >= 0 && num(el, k) <= w);
        for (const char* k : {"y1", "y2"}) EXPECT_TRUE(num(el, k) >= 0 && num(el, k) <= h);
    }
}
