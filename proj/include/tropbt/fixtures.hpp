#pragma once

#include "curve.hpp"

#include <cstdint>
#include <random>
#include <vector>

// Reference quartics used by the tests, the self-test and the sample files in fixtures/.
namespace tropbt::fixtures {

inline TropicalPolynomial from_table(int degree, const std::vector<std::pair<LatticePoint, Rational>>& terms) {
    Lift lift;
    for (const auto& [p, c] : terms) lift.value[p] = c;
    return make_polynomial(degree, lift);
}

// c(i,j) = i² + ij + j²: unimodular triangulation, genus 3.
inline TropicalPolynomial smooth_quartic() {
    Lift lift;
    for (const auto& p : simplex_points(4)) lift.value[p] = Rational(p.x * p.x + p.x * p.y + p.y * p.y);
    return make_polynomial(4, lift);
}

inline TropicalPolynomial flat_quartic() {
    Lift lift;
    for (const auto& p : simplex_points(4)) lift.value[p] = Rational(0);
    return make_polynomial(4, lift);
}

// One cycle, a bounded weight-2 edge dual to (0,3)-(2,1) and a weight-1 vertex dual to the
// triangle (0,0),(0,3),(2,1).
inline TropicalPolynomial one_cycle_quartic() {
    return from_table(4, {{{0, 0}, 0}, {{1, 0}, 1}, {{2, 0}, 3}, {{3, 0}, 8}, {{4, 0}, 14},
                          {{0, 1}, 1}, {{1, 1}, 1}, {{2, 1}, 0}, {{3, 1}, 7},
                          {{0, 2}, 1}, {{1, 2}, 1}, {{2, 2}, 4},
                          {{0, 3}, 0}, {{1, 3}, 2},
                          {{0, 4}, 1}});
}

// Degeneration family: the coefficient of x·y is 8 − h. For h > 0 the curve is smooth and has a
// rectangular cycle of height proportional to h; at h = 0 the cycle collapses onto a weight-2 edge.
struct AffineTerm {
    LatticePoint p;
    Rational constant;
    Rational slope;
};

inline std::vector<AffineTerm> collapsing_family_terms() {
    std::vector<AffineTerm> t{{{0, 0}, 1, 0}, {{1, 0}, 3, 0}, {{2, 0}, 15, 0}, {{3, 0}, 30, 0}, {{4, 0}, 47, 0},
                              {{0, 1}, 4, 0}, {{1, 1}, 8, -1}, {{2, 1}, 15, 0}, {{3, 1}, 31, 0},
                              {{0, 2}, 12, 0}, {{1, 2}, 13, 0}, {{2, 2}, 22, 0},
                              {{0, 3}, 29, 0}, {{1, 3}, 33, 0},
                              {{0, 4}, 48, 0}};
    return t;
}

inline TropicalPolynomial collapsing_family_member(const Rational& h) {
    Lift lift;
    for (const auto& t : collapsing_family_terms()) lift.value[t.p] = t.constant + t.slope * h;
    return make_polynomial(4, lift);
}

// Random lift with a convex quadratic trend and integer noise; retried until the subdivision is
// a unimodular triangulation.
inline TropicalPolynomial random_smooth_quartic(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> noise(-4, 4);
    for (;;) {
        Lift lift;
        for (const auto& p : simplex_points(4))
            lift.value[p] = Rational(6 * (p.x * p.x + p.y * p.y) + 3 * p.x * p.y + noise(rng));
        auto sub = regular_subdivision(lift);
        bool unimodular = sub.faces.size() == 16;
        for (const auto& f : sub.faces) unimodular = unimodular && f.size() == 3 && f.twice_area() == 1;
        if (unimodular) return make_polynomial(4, lift);
    }
}

}  // namespace tropbt::fixtures
