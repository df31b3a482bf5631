#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace tropbt;

namespace {

PolynomialFamily collapsing_family() {
    PolynomialFamily fam;
    fam.degree = 4;
    for (const auto& t : fixtures::collapsing_family_terms()) fam.terms[t.p] = {t.constant, t.slope};
    return fam;
}

}  // namespace

TEST(Family, MembersMatchFixture) {
    const auto fam = collapsing_family();
    for (const Rational h : {Rational(0), rat(1, 4), Rational(1)}) EXPECT_EQ(fam.at(h), fixtures::collapsing_family_member(h));
}

TEST(Family, PositiveMembersShareOneSmoothType) {
    const auto fam = collapsing_family();
    const auto a = curve_from_polynomial(fam.at(Rational(1)));
    const auto b = curve_from_polynomial(fam.at(rat(1, 4)));
    EXPECT_TRUE(is_smooth(a));
    auto fa = a.subdivision.faces, fb = b.subdivision.faces;
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    EXPECT_EQ(fa, fb);
    const auto z = curve_from_polynomial(fam.at(Rational(0)));
    EXPECT_FALSE(is_smooth(z));
    EXPECT_EQ(jacobian_dimension(z), 2);
}

TEST(Family, LatticeBasisSpansCycleSpace) {
    for (const Rational h : {Rational(1), Rational(0)}) {
        const auto c = curve_from_polynomial(collapsing_family().at(h));
        const auto pg = build_paired_graph(c);
        const auto basis = lattice_cycle_basis(c, pg);
        ASSERT_EQ(basis.size(), 3u);
        std::set<CycleZ2> spanned;
        for (int mask = 0; mask < 8; ++mask) {
            CycleZ2 s;
            for (int i = 0; i < 3; ++i)
                if ((mask >> i) & 1) s = s ^ basis[i].second;
            spanned.insert(s);
            EXPECT_TRUE(is_cycle(pg.sigma, s));
        }
        EXPECT_EQ(spanned.size(), 8u);
        for (const auto& cyc : cycle_space(pg.sigma)) EXPECT_TRUE(cycle_coordinates(cyc, basis).has_value());
    }
}

TEST(Family, SumRuleAtTheCollapse) {
    const auto rep = family_multiplicities(collapsing_family(), {Rational(1), rat(1, 2), rat(1, 4), Rational(0)});
    EXPECT_TRUE(rep.passed);
    for (const auto& f : rep.failures) ADD_FAILURE() << f;
    ASSERT_EQ(rep.samples.size(), 4u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(rep.samples[i].verdict.summary, "7 classes × 1");
    EXPECT_EQ(rep.samples[3].verdict.summary, "3 classes × 2 + 1 class × 1");
    ASSERT_EQ(rep.matches.size(), 4u);
    int doubled = 0;
    for (const auto& m : rep.matches) {
        ASSERT_EQ(m.sources.size(), 3u);
        for (const auto& s : m.sources) {
            EXPECT_EQ(s.multiplicity_sum, m.limit_multiplicity);
            EXPECT_EQ(s.classes.size(), 2u);  // eight classes for h > 0 land pairwise on four
        }
        if (m.limit_multiplicity == 2) ++doubled;
    }
    EXPECT_EQ(doubled, 3);
}

TEST(Family, RejectsNegativeValuesAndTypeChanges) {
    EXPECT_THROW(family_multiplicities(collapsing_family(), {Rational(-1)}), Error);
    // smooth for small h; at h = 1 the interior point (1,1) is lifted off the lower hull
    PolynomialFamily lifting;
    lifting.degree = 4;
    for (const auto& p : simplex_points(4)) lifting.terms[p] = {Rational(p.x * p.x + p.x * p.y + p.y * p.y), Rational(0)};
    lifting.terms[{1, 1}].slope = Rational(10);
    auto f0 = curve_from_polynomial(lifting.at(rat(1, 20))).subdivision.faces;
    auto f1 = curve_from_polynomial(lifting.at(Rational(1))).subdivision.faces;
    std::sort(f0.begin(), f0.end());
    std::sort(f1.begin(), f1.end());
    ASSERT_NE(f0, f1);
    EXPECT_THROW(family_multiplicities(lifting, {Rational(1), rat(1, 20)}), Error);
}
