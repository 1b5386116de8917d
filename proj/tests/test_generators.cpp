#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "doctest.h"
#include "lensgrid/corpus.hpp"
#include "lensgrid/generators.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lensgrid;
using testsupport::l52;

namespace {

oracle::BruteRect as_brute(const Diagram& d, const Parallelogram& r) {
    oracle::BruteRect b;
    for (auto& c : generator_points(d, r.terminal)) b.terminal.insert(oracle::reduce(d.p, d.q, d.n, c.c1, c.c2));
    b.mult = domain_of(d, r).mult;
    b.nX = r.nX;
    b.nO = r.nO;
    return b;
}

// Small diagrams with np <= 6.
std::vector<Diagram> small_corpus() {
    auto out = n2_exhaustive(3);
    for (auto& d : random_diagrams(3, 2, 12, 11)) out.push_back(d);
    for (auto& d : random_diagrams(4, 1, 4, 12)) out.push_back(d);
    for (auto& d : random_diagrams(5, 1, 3, 13)) out.push_back(d);
    for (auto& d : random_diagrams(6, 1, 2, 14)) out.push_back(d);
    for (int p = 1; p <= 6; ++p) out.push_back(Diagram{p, p == 1 ? 0 : 1, 1, {{0, 0}}, {{p > 1 ? 1 : 0, 0}}});
    return out;
}

struct EnvGuard {
    explicit EnvGuard(const char* value) { setenv("LENSGRID_CEILING", value, 1); }
    ~EnvGuard() { unsetenv("LENSGRID_CEILING"); }
};

}  // namespace

TEST_CASE("generator counts") {
    Diagram a{5, 2, 1, {{0, 0}}, {{1, 0}}};
    CHECK(generator_count(a) == 5);
    CHECK(enumerate_generators(a).size() == 5);
    CHECK(generator_count(l52()) == 750);
    CHECK(enumerate_generators(l52()).size() == 750);
    CHECK(enumerate_generators(testsupport::unknot2()).size() == 2);
}

TEST_CASE("enumeration is deterministic, distinct and indexable") {
    auto d = l52();
    auto gens = enumerate_generators(d);
    CHECK(std::is_sorted(gens.begin(), gens.end()));
    CHECK(std::set<Generator>(gens.begin(), gens.end()).size() == gens.size());
    GeneratorSpace S(d);
    for (std::size_t i = 0; i < gens.size(); i += 37) {
        CHECK(S.at(i) == gens[i]);
        CHECK(S.index_of(gens[i]) == i);
        CHECK(generator_from_points(d, generator_points(d, gens[i])) == gens[i]);
    }
}

TEST_CASE("count ceiling refuses large enumerations") {
    EnvGuard g("100");
    CHECK(generator_ceiling() == 100);
    CHECK_THROWS_AS(enumerate_generators(l52()), Error);
}

TEST_CASE("special generator x_O") {
    auto xo = special_generator_xO(l52());
    CHECK(xo.a == std::vector<int>{3, 4, 2});
    Diagram d{3, 1, 2, {{1, 0}, {0, 1}}, {{0, 0}, {1, 1}}};
    CHECK(special_generator_xO(d).a == std::vector<int>{0, 0});
}

TEST_CASE("L(5,2) example z parses to the listed p-coordinates") {
    auto z = generator_from_points(l52(), {{13, 0}, {2, 1}, {9, 2}});
    CHECK(z.a == std::vector<int>{4, 0, 3});
    CHECK(z.sigma == std::vector<int>{1, 2, 0});
    CHECK(is_generator(l52(), z));
}

TEST_CASE("2x2 sphere grid: two empty parallelograms per generator") {
    auto d = testsupport::unknot2();
    for (auto& x : enumerate_generators(d)) {
        auto rs = empty_parallelograms_from(d, x);
        CHECK(rs.size() == 2);
        for (auto& r : rs) {
            CHECK(r.rect.w == 1);
            CHECK(r.rect.h == 1);
            CHECK(r.terminal != x);
        }
    }
}

TEST_CASE("one-row grids have no parallelograms") {
    for (int p = 1; p <= 5; ++p)
        for (int q = 0; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            Diagram d{p, q, 1, {{0, 0}}, {{0, 0}}};
            for (auto& x : enumerate_generators(d)) CHECK(parallelograms_from(d, x, false).empty());
        }
}

TEST_CASE("L(5,2) example: a parallelogram from z with tau = (0 1)") {
    auto d = l52();
    auto z = generator_from_points(d, {{13, 0}, {2, 1}, {9, 2}});
    bool found = false;
    for (auto& r : empty_parallelograms_from(d, z)) found |= r.tau() == std::pair<int, int>{0, 1};
    CHECK(found);
}

TEST_CASE("enumeration agrees with the brute-force rectangle scan for np <= 6") {
    int checked = 0;
    for (auto& d : small_corpus()) {
        REQUIRE(d.N() <= 6);
        for (auto& x : enumerate_generators(d)) {
            auto pts = generator_points(d, x);
            for (bool empty : {true, false}) {
                std::vector<oracle::BruteRect> mine;
                for (auto& r : parallelograms_from(d, x, empty)) mine.push_back(as_brute(d, r));
                std::sort(mine.begin(), mine.end());
                auto ref = oracle::brute_parallelograms(d, pts, empty);
                CHECK(mine == ref);
                ++checked;
            }
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("interior corners and heights stay in range") {
    for (auto& d : n2_exhaustive(3))
        for (auto& x : enumerate_generators(d))
            for (auto& r : parallelograms_from(d, x, false)) {
                CHECK(r.rect.w >= 1);
                CHECK(r.rect.w < d.N());
                CHECK(r.rect.h >= 1);
                CHECK(r.rect.h < d.N());
                CHECK(rect_embedded(d.p, d.q, d.n, r.rect.w, r.rect.h));
                auto D = domain_of(d, r);
                CHECK(static_cast<int>(D.mult.size()) == d.p * d.n * d.n);
            }
}

TEST_CASE("reversal: every empty parallelogram is found backwards") {
    for (auto& d : n2_exhaustive(3))
        for (auto& x : enumerate_generators(d))
            for (auto& r : empty_parallelograms_from(d, x)) {
                // The reverse uses the other pair of corners, so its support differs.
                bool found = false;
                for (auto& s : empty_parallelograms_from(d, r.terminal))
                    if (s.terminal == x) found = true;
                CHECK(found);
            }
}

TEST_CASE("juxtaposition adds multiplicities and marking counts") {
    int pairs = 0;
    for (auto& d : n2_exhaustive(3))
        for (auto& x : enumerate_generators(d))
            for (auto& r1 : empty_parallelograms_from(d, x))
                for (auto& r2 : empty_parallelograms_from(d, r1.terminal)) {
                    auto D = juxtapose(domain_of(d, r1), domain_of(d, r2));
                    auto nO = domain_marking_counts(d, D, false), nX = domain_marking_counts(d, D, true);
                    for (int i = 0; i < d.n; ++i) {
                        CHECK(nO[i] == r1.nO[i] + r2.nO[i]);
                        CHECK(nX[i] == r1.nX[i] + r2.nX[i]);
                    }
                    ++pairs;
                }
    CHECK(pairs > 0);
    auto d = l52();
    auto x = enumerate_generators(d)[0];
    auto rs = empty_parallelograms_from(d, x);
    REQUIRE(!rs.empty());
    auto bad = domain_of(d, rs[0]);
    CHECK_THROWS_AS(juxtapose(bad, bad), Error);
}

TEST_CASE("row annulus from two height-one parallelograms") {
    bool found = false;
    for (auto& d : n2_exhaustive(3)) {
        for (auto& x : enumerate_generators(d))
            for (auto& r1 : empty_parallelograms_from(d, x)) {
                if (r1.rect.h != 1) continue;
                for (auto& r2 : empty_parallelograms_from(d, r1.terminal)) {
                    if (r2.rect.h != 1 || r2.rect.v != r1.rect.v || r2.terminal != x || r1.rect.w + r2.rect.w != d.N()) continue;
                    auto D = juxtapose(domain_of(d, r1), domain_of(d, r2));
                    int row = r1.rect.v;
                    bool full = true;
                    for (int c2 = 0; c2 < d.n; ++c2)
                        for (int c1 = 0; c1 < d.N(); ++c1)
                            full &= D.mult[static_cast<std::size_t>(c2) * d.N() + c1] == (c2 == row ? 1 : 0);
                    CHECK(full);
                    found = true;
                }
            }
        if (found) break;
    }
    CHECK(found);
}

TEST_CASE("composite domains with distinct ends decompose exactly twice") {
    int seen = 0;
    for (auto& d : n2_exhaustive(3))
        for (auto& x : enumerate_generators(d))
            for (auto& r1 : empty_parallelograms_from(d, x)) {
                CHECK(decompositions(d, domain_of(d, r1)).empty());
                for (auto& r2 : empty_parallelograms_from(d, r1.terminal)) {
                    if (r2.terminal == x) continue;
                    auto D = juxtapose(domain_of(d, r1), domain_of(d, r2));
                    CHECK(decompositions(d, D).size() == 2);
                    ++seen;
                }
            }
    CHECK(seen > 0);
}

TEST_CASE("generator text form round-trips") {
    auto d = l52();
    for (auto& x : enumerate_generators(d)) {
        auto s = to_string(x);
        auto bar = s.find('/');
        REQUIRE(bar != std::string::npos);
        CHECK(parse_generator(d.n, s.substr(0, bar), s.substr(bar + 1)) == x);
    }
}
