#include <numeric>
#include <set>

#include "doctest.h"
#include "lensgrid/corpus.hpp"
#include "lensgrid/gradings.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lensgrid;
using testsupport::l52;

namespace {

Generator l52_z(const Diagram& d) { return generator_from_points(d, {{13, 0}, {2, 1}, {9, 2}}); }

bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace

TEST_CASE("I counts") {
    CHECK(I_count({}, {{1, 1}}) == 0);
    CHECK(I_count({{0, 0}}, {{1, 1}}) == 1);
    CHECK(I_count({{0, 0}}, {{0, 1}}) == 0);
    CHECK(I_count({{1, 1}}, {{0, 0}}) == 0);
}

TEST_CASE("L(5,2) example anchor values") {
    auto d = l52();
    auto z = l52_z(d);
    CHECK(spin_c_tilde(d, z) == 3);
    CHECK(spin_c(d, z) == 4);
    auto mo = maslov_parts(d, z, false);
    CHECK(mo.xx == 52);
    CHECK(mo.xm == 55);
    CHECK(mo.mx == 40);
    CHECK(mo.mm == 42);
    auto mx = maslov_parts(d, z, true);
    CHECK(mx.xx == 52);
    CHECK(mx.xm == 67);
    CHECK(mx.mx == 52);
    CHECK(mx.mm == 62);
    CHECK(maslov(d, z) == Rational(2, 5));
    CHECK(maslov_X(d, z) == Rational(-2, 5));
    CHECK(alexander(d, z) == Rational(-3, 5));
    auto g = grading(d, z);
    CHECK(g == Grading{4, Rational(2, 5), Rational(-3, 5)});
    CHECK(Grader(d)(z) == g);
}

TEST_CASE("correction term") {
    CHECK(d_invariant(1, 0, 0) == 0);
    CHECK(d_invariant(5, 2, 1) == Rational(-2, 5));
    // Sign follows the recursion that reproduces d(5,2,1) = -2/5.
    CHECK(d_invariant(2, 1, 0) == Rational(-1, 4));
    CHECK_THROWS_AS(d_invariant(4, 2, 0), Error);
    CHECK_THROWS_AS(d_invariant(3, 0, 0), Error);
    for (int p = 2; p <= 13; ++p)
        for (int q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            for (int i = 0; i < p; ++i) {
                auto [num, den] = oracle::d_fraction(p, q, i);
                CHECK(d_invariant(p, q, i) == Rational(num, den));
            }
        }
    CHECK(maslov_correction(5, 2) == d_invariant(5, 2, 1));
    CHECK(maslov_correction(1, 0) == 0);
}

TEST_CASE("spin^c of x_O") {
    for (auto& d : random_diagrams(3, 6, 20, 5)) {
        auto xo = special_generator_xO(d);
        CHECK(spin_c_tilde(d, xo) == 0);
        CHECK(spin_c(d, xo) == static_cast<int>(pmod(d.q - 1, d.p)));
    }
    auto d = testsupport::unknot2();
    for (auto& x : enumerate_generators(d)) CHECK(spin_c(d, x) == 0);
}

TEST_CASE("sphere grids agree with the classical formulas") {
    std::vector<Diagram> grids{testsupport::unknot2(),
                               Diagram{1, 0, 3, {{0, 0}, {1, 1}, {2, 2}}, {{1, 0}, {2, 1}, {0, 2}}},
                               Diagram{1, 0, 3, {{0, 0}, {1, 1}, {2, 2}}, {{2, 0}, {0, 1}, {1, 2}}}};
    for (auto& d : random_diagrams(2, 1, 4, 21)) grids.push_back(d);
    for (auto& d : random_diagrams(3, 1, 12, 22)) grids.push_back(d);
    for (auto& d : grids) {
        Grader G(d);
        for (auto& x : enumerate_generators(d)) {
            auto ref = oracle::s3_grading(d, generator_points(d, x));
            auto g = G(x);
            CHECK(g.M == ref.M);
            CHECK(g.A == ref.A);
        }
    }
    // The 2x2 unknot: the two generators sit in (M, A) = (0, 0) and (-1, -1).
    auto d = testsupport::unknot2();
    std::set<std::pair<Rational, Rational>> MA;
    for (auto& x : enumerate_generators(d)) MA.insert({maslov(d, x), alexander(d, x)});
    CHECK(MA == std::set<std::pair<Rational, Rational>>{{Rational(-1), Rational(-1)}, {Rational(0), Rational(0)}});
}

TEST_CASE("gradings drop across empty parallelograms as required") {
    auto corpus = n2_exhaustive(3);
    corpus.push_back(l52());
    for (auto& d : random_diagrams(3, 3, 6, 31)) corpus.push_back(d);
    for (auto& d : corpus) {
        Grader G(d);
        for (auto& x : enumerate_generators(d)) {
            auto gx = G(x);
            for (auto& r : empty_parallelograms_from(d, x)) {
                auto gy = G(r.terminal);
                CHECK(gx.S == gy.S);
                CHECK(gx.M == gy.M + 1 - 2 * r.total_O());
                CHECK(gx.A == gy.A + r.total_X() - r.total_O());
            }
        }
    }
}

TEST_CASE("Maslov numerator is an integer count") {
    for (auto& d : random_diagrams(3, 5, 10, 41)) {
        Grader G(d);
        auto corr = maslov_correction(d.p, d.q);
        for (auto& x : enumerate_generators(d)) {
            auto g = G(x);
            CHECK(is_integer(d.p * (g.M - corr - 1)));
            // 2A + (n - l) = M - M_X has denominator dividing p.
            CHECK(is_integer(d.p * (G.M(x) - G.MX(x))));
        }
    }
}

TEST_CASE("gradings do not depend on the fundamental domain") {
    std::vector<Diagram> ds{l52()};
    for (auto& d : random_diagrams(2, 4, 4, 51)) ds.push_back(d);
    for (auto& d : ds) {
        auto gens = enumerate_generators(d);
        Grader G(d);
        for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{5, 2}, std::pair{-3, -4}}) {
            auto s = shift_fundamental_domain(d, dx, dy);
            Grader Gs(s);
            for (std::size_t i = 0; i < gens.size(); i += 7) {
                std::vector<Cell> pts;
                for (auto& c : generator_points(d, gens[i])) pts.push_back(shift_point(d, c, dx, dy));
                CHECK(Gs(generator_from_points(s, pts)) == G(gens[i]));
            }
        }
    }
}

TEST_CASE("Maslov parity and rational text") {
    CHECK(maslov_parity(Rational(2, 5)) == 0);
    CHECK(maslov_parity(Rational(-2, 5)) == 1);
    CHECK(maslov_parity(Rational(3)) == 1);
    CHECK(to_string(Rational(-3, 5)) == "-3/5");
    CHECK(to_string(Rational(4)) == "4");
    CHECK(parse_rational("-3/5") == Rational(-3, 5));
}
