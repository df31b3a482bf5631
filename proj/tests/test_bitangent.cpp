#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace tropbt;

namespace {

std::vector<std::pair<std::string, PlaneCurve>> fixture_curves() {
    return {{"smooth", curve_from_polynomial(fixtures::smooth_quartic())},
            {"one_cycle", curve_from_polynomial(fixtures::one_cycle_quartic())},
            {"flat", curve_from_polynomial(fixtures::flat_quartic())},
            {"collapsed", curve_from_polynomial(fixtures::collapsing_family_member(Rational(0)))}};
}

Rational linf(const Point2& a, const Point2& b) { return std::max(abs_value(Rational(a.x - b.x)), abs_value(Rational(a.y - b.y))); }

std::vector<int> sorted_multiplicities(const BitangentEnumeration& en) {
    std::vector<int> m;
    for (const auto& c : en.classes) m.push_back(c.multiplicity);
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

TEST(StableIntersection, BezoutOnRandomLines) {
    Rng rng(41);
    for (const auto& [name, c] : fixture_curves()) {
        const auto r = bezout_suite(c, rng, 100);
        EXPECT_TRUE(r.passed()) << name << ": " << (r.failures.empty() ? "" : r.failures.front());
    }
}

TEST(StableIntersection, SameForOtherPerturbationDirections) {
    Rng rng(42);
    for (const auto& [name, c] : fixture_curves()) {
        const auto cg = curve_graph(c);
        for (int t = 0; t < 30; ++t) {
            const auto line = random_line(c, rng);
            const auto d0 = section_divisor(stable_intersection(line, c, cg, choose_perturbation(c, 0)));
            for (int skip : {1, 3}) EXPECT_EQ(section_divisor(stable_intersection(line, c, cg, choose_perturbation(c, skip))), d0) << name;
        }
    }
}

// Lines through curve vertices and along curve edges, where the intersection is not transverse.
TEST(StableIntersection, DegenerateLinesStillHaveDegreeFour) {
    for (const auto& [name, c] : fixture_curves()) {
        for (const auto& v : c.vertices) {
            EXPECT_EQ(line_section({v.position}, c).degree(), 4) << name;
            EXPECT_EQ(line_section({{Rational(v.position.x + 1), v.position.y}}, c).degree(), 4) << name;
            EXPECT_EQ(line_section({{v.position.x, Rational(v.position.y + rat(1, 2))}}, c).degree(), 4) << name;
        }
    }
}

// Chips are the limits of transverse intersection points of slightly translated lines.
TEST(StableIntersection, LimitOfNumericTranslation) {
    Rng rng(43);
    const Rational t = rat(1, 10000000);
    const Rational radius = rat(1, 10000);
    for (const auto& [name, c] : fixture_curves()) {
        const auto cg = curve_graph(c);
        const std::vector<Point2> special = [&] {
            std::vector<Point2> s;
            for (const auto& v : c.vertices) s.push_back(v.position);
            return s;
        }();
        for (int trial = 0; trial < 40; ++trial) {
            const auto line = trial < static_cast<int>(special.size()) ? TropicalLine{special[trial]} : random_line(c, rng);
            const auto v = choose_perturbation(c, 2);
            std::map<Point2, std::int64_t> expected;
            for (const auto& comp : stable_intersection(line, c, cg, choose_perturbation(c)))
                for (const auto& chip : comp.chips) expected[chip.position] += chip.multiplicity;
            std::map<Point2, std::int64_t> got;
            for (const auto& [p, m] : oracle::perturbed_intersection(line, c, v, t)) {
                const Point2* best = nullptr;
                for (const auto& [q, k] : expected)
                    if (linf(p, q) < radius) best = &q;
                ASSERT_NE(best, nullptr) << name << " trial " << trial;
                got[*best] += m;
            }
            EXPECT_EQ(got, expected) << name << " trial " << trial;
        }
    }
}

TEST(LineSection, CanonicalClass) {
    Rng rng(44);
    for (const auto& [name, c] : fixture_curves()) {
        CurveClassifier cc(c);
        const auto r = canonical_section_suite(cc, rng, 20);
        EXPECT_TRUE(r.passed()) << name;
    }
}

TEST(Arrangement, GridProbeFindsOnlyListedCells) {
    for (const auto& [name, c] : fixture_curves()) {
        const auto arr = critical_arrangement(c);
        std::set<std::vector<signed char>> cells;
        for (const auto& f : arr.faces)
            if (f.dimension == 2) EXPECT_TRUE(cells.insert(oracle::sign_vector(arr.lines, f.sample)).second) << name;
        for (const auto& s : cells) EXPECT_TRUE(std::find(s.begin(), s.end(), 0) == s.end());
        Rational lo = -30, hi = 30;
        for (const auto& v : c.vertices) {
            lo = std::min({lo, Rational(v.position.x - 5), Rational(v.position.y - 5)});
            hi = std::max({hi, Rational(v.position.x + 5), Rational(v.position.y + 5)});
        }
        const int steps = 97;
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j) {
                const Point2 p{Rational(lo + (hi - lo) * (4 * i + 1) / (4 * steps + 3)), Rational(lo + (hi - lo) * (4 * j + 2) / (4 * steps + 3))};
                const auto s = oracle::sign_vector(arr.lines, p);
                if (std::find(s.begin(), s.end(), 0) != s.end()) continue;
                EXPECT_TRUE(cells.count(s)) << name << " probe " << i << "," << j;
            }
    }
}

TEST(Arrangement, EulerCharacteristicOfThePlane) {
    for (const auto& [name, c] : fixture_curves()) {
        const auto arr = critical_arrangement(c);
        std::array<int, 3> count{};
        for (const auto& f : arr.faces) ++count[f.dimension];
        EXPECT_EQ(count[0] - count[1] + count[2], 1) << name;
    }
    // three lines in general position: 3 vertices, 9 edges, 7 regions
    const auto arr = arrangement_of({make_param_line(1, 0, Rational(0)), make_param_line(0, 1, Rational(0)), make_param_line(1, 1, Rational(1))});
    std::array<int, 3> count{};
    for (const auto& f : arr.faces) ++count[f.dimension];
    EXPECT_EQ(count, (std::array<int, 3>{3, 9, 7}));
}

TEST(Bitangents, WitnessesAreTangentAndClassified) {
    for (const auto& [name, c] : fixture_curves()) {
        CurveClassifier cc(c);
        const auto table = theta_class_table(cc);
        const auto en = enumerate_bitangents(cc, table, critical_arrangement(c));
        EXPECT_EQ(en.gate_only_faces, 0) << name;
        EXPECT_TRUE(en.missing.empty()) << name;
        const auto& rg = cc.rescaled();
        for (const auto& cls : en.classes) {
            const auto& w = cls.representative;
            ASSERT_EQ(w.tangency.size(), 2u);
            EXPECT_EQ(classify_bitangent(w, table), cls.table_index);
            EXPECT_EQ(w.tangency_divisor, w.theta.scaled(2));
            // the tangency points lie on the line
            for (const auto& tp : w.tangency) {
                const auto& o = w.line.vertex;
                const Rational dx = tp.position.x - o.x, dy = tp.position.y - o.y;
                const bool on = (sgn(dx) == 0 && sgn(dy) >= 0) || (sgn(dy) == 0 && sgn(dx) >= 0) || (dx == dy && sgn(dx) <= 0);
                EXPECT_TRUE(on) << name;
            }
            // 2P + 2Q is linearly equivalent to the line section, checked on the unit subdivision
            const Divisor sec = retract_to_core(rg.graph, rg.to_rescaled(section_divisor(w.components)));
            const Divisor tan = retract_to_core(rg.graph, rg.to_rescaled(w.tangency_divisor));
            const oracle::FiniteModel model(rg.graph, oracle::common_scale(rg.graph, {sec, tan}));
            EXPECT_TRUE(model.equivalent(sec, tan, global_base(c))) << name;
            EXPECT_TRUE(is_bitangent(w.line, cc).has_value());
        }
    }
}

TEST(Bitangents, NonBitangentLine) {
    const auto c = curve_from_polynomial(fixtures::smooth_quartic());
    // far away in the negative quadrant the line meets only the three ray bundles transversally
    EXPECT_FALSE(is_bitangent({{Rational(-1000), Rational(-1000)}}, c).has_value());
}

TEST(MainTheorem, Fixtures) {
    const std::map<std::string, std::vector<int>> expected{
        {"smooth", {1, 1, 1, 1, 1, 1, 1}}, {"one_cycle", {3, 4}}, {"flat", {7}}, {"collapsed", {1, 2, 2, 2}}};
    const std::map<std::string, std::string> summary{
        {"smooth", "7 classes × 1"}, {"one_cycle", "1 class × 4 + 1 class × 3"}, {"flat", "1 class × 7"}, {"collapsed", "3 classes × 2 + 1 class × 1"}};
    for (const auto& [name, c] : fixture_curves()) {
        const auto rep = verify_main_theorem(c);
        EXPECT_TRUE(rep.passed) << name;
        EXPECT_EQ(rep.summary, summary.at(name));
        auto m = rep.multiplicities;
        std::sort(m.begin(), m.end());
        EXPECT_EQ(m, expected.at(name));
        EXPECT_EQ(std::accumulate(m.begin(), m.end(), 0), 7);
        EXPECT_EQ(sorted_multiplicities(enumerate_bitangents(c)), expected.at(name));
    }
}

TEST(MainTheorem, RandomSmoothQuartics) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto rep = verify_main_theorem(curve_from_polynomial(fixtures::random_smooth_quartic(seed)));
        EXPECT_TRUE(rep.passed) << seed;
        EXPECT_EQ(rep.summary, "7 classes × 1");
    }
}
