#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "lensgrid/corpus.hpp"
#include "lensgrid/homology.hpp"
#include "lensgrid/moves.hpp"
#include "support.hpp"

using namespace lensgrid;
using testsupport::l52;
using testsupport::unknot2;

namespace {

const StabKind all_kinds[] = {StabKind::X_NW, StabKind::X_NE, StabKind::X_SW, StabKind::X_SE,
                              StabKind::O_NW, StabKind::O_NE, StabKind::O_SW, StabKind::O_SE};

std::vector<Diagram> move_corpus() {
    auto out = n2_exhaustive(2);
    for (auto& d : random_diagrams(3, 2, 10, 303)) out.push_back(d);
    out.push_back(l52());
    return out;
}

std::map<PieceKey, std::pair<std::size_t, std::vector<BigInt>>> flatten(const HomologyTable& t) {
    std::map<PieceKey, std::pair<std::size_t, std::vector<BigInt>>> out;
    for (auto& [k, h] : t) out[k] = {h.rank, h.torsion};
    return out;
}

}  // namespace

TEST_CASE("commutations and switches are involutions") {
    int comm = 0, sw = 0;
    for (auto& d : move_corpus())
        for (int j = 0; j < d.n; ++j) {
            if (columns_special(d, j)) {
                auto e = switch_columns(d, j);
                CHECK(validate(e).empty());
                CHECK(same_up_to_relabeling(switch_columns(e, j), d));
                CHECK_THROWS_AS(commute_columns(d, j), Error);
                ++sw;
            } else {
                try {
                    auto e = commute_columns(d, j);
                    CHECK(validate(e).empty());
                    CHECK(same_up_to_relabeling(commute_columns(e, j), d));
                    CHECK(component_count(e) == component_count(d));
                    ++comm;
                } catch (const Error&) {
                    // interleaved pair
                }
                CHECK_THROWS_AS(switch_columns(d, j), Error);
            }
            try {
                auto e = commute_rows(d, j);
                CHECK(same_up_to_relabeling(commute_rows(e, j), d));
            } catch (const Error&) {
            }
        }
    CHECK(comm > 10);
    CHECK(sw > 3);
}

TEST_CASE("interleaved columns cannot commute") {
    // Column 0 holds X at row 0 and O at row 2; column 1 holds X at row 1, O at row 3.
    Diagram d{1, 0, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}, {{2, 0}, {3, 1}, {0, 2}, {1, 3}}};
    REQUIRE(validate(d).empty());
    CHECK_THROWS_AS(commute_columns(d, 0), Error);
    CHECK_THROWS_AS(build_combined(d, 0), Error);
}

TEST_CASE("transpose is an involution up to relabeling") {
    for (auto& d : move_corpus()) {
        auto t = transpose(d);
        CHECK(validate(t).empty());
        CHECK(component_count(t) == component_count(d));
        CHECK(generator_count(t) == generator_count(d));
        CHECK(same_up_to_relabeling(transpose(t), d));
    }
}

TEST_CASE("L(5,2) example: the second and third columns form a switch") {
    auto d = l52();
    CHECK(columns_special(d, 1));
    int comm = 0;
    for (int j = 0; j < d.n; ++j) {
        CombinedDiagram cd;
        try {
            cd = build_combined(d, j);
        } catch (const Error&) {
            continue;
        }
        CHECK(cd.is_switch == (j == 1));
        CHECK(cd.length == 8 * d.N());
        comm += !cd.is_switch;
        for (Ring ring : {Ring::F2, Ring::Z}) {
            auto S = ring == Ring::Z ? solved_signs(GridShape::of(d)) : nullptr;
            auto rep = verify_commutation(cd, ring, S.get());
            CHECK_MESSAGE(rep.chain_map.ok, rep.chain_map.witness);
            CHECK_MESSAGE(rep.grading.ok, rep.grading.witness);
            CHECK_MESSAGE(rep.homotopy.ok, rep.homotopy.witness);
            CHECK(rep.tilde_equal);
        }
    }
    CHECK(comm >= 1);
}

TEST_CASE("pentagons preserve gradings and hexagons straighten") {
    int pent = 0, hex = 0;
    for (auto& d : move_corpus()) {
        for (int j = 0; j < d.n; ++j) {
            CombinedDiagram cd;
            try {
                cd = build_combined(d, j);
            } catch (const Error&) {
                continue;
            }
            Grader Gb(cd.before), Ga(cd.after);
            for (auto& x : enumerate_generators(cd.before)) {
                for (auto& s : enumerate_polygons(cd, x, PolygonKind::PentagonBG)) {
                    if (std::accumulate(s.nX.begin(), s.nX.end(), 0) != 0) continue;
                    auto gx = Gb(x), gy = Ga(s.terminal);
                    // Pentagons with O markings shift by the monomial.
                    int nO = std::accumulate(s.nO.begin(), s.nO.end(), 0);
                    CHECK(gx.S == gy.S);
                    CHECK(gx.M == gy.M - 2 * nO);
                    CHECK(gx.A == gy.A - nO);
                    ++pent;
                }
                for (auto& h : enumerate_polygons(cd, x, PolygonKind::Hexagon)) {
                    bool found = false;
                    for (auto& r : parallelograms_from(cd.before, h.R.initial, false))
                        if (parallelogram_key(r) == parallelogram_key(h.R)) found = r.terminal == h.R.terminal;
                    CHECK(found);
                    CHECK(h.terminal == h.R.terminal);
                    ++hex;
                }
            }
            for (auto& y : enumerate_generators(cd.after))
                for (auto& s : enumerate_polygons(cd, y, PolygonKind::PentagonGB)) {
                    if (std::accumulate(s.nX.begin(), s.nX.end(), 0) != 0) continue;
                    auto gy = Ga(y), gx = Gb(s.terminal);
                    int nO = std::accumulate(s.nO.begin(), s.nO.end(), 0);
                    CHECK(gy.S == gx.S);
                    CHECK(gy.M == gx.M - 2 * nO);
                    CHECK(gy.A == gx.A - nO);
                    ++pent;
                }
        }
    }
    CHECK(pent > 100);
    CHECK(hex > 10);
}

TEST_CASE("commutation and switch identities hold over F2 and Z") {
    int comm = 0, sw = 0;
    for (auto& d : move_corpus()) {
        auto S = solved_signs(GridShape::of(d));
        for (int j = 0; j < d.n; ++j) {
            CombinedDiagram cd;
            try {
                cd = build_combined(d, j);
            } catch (const Error&) {
                continue;
            }
            for (Ring ring : {Ring::F2, Ring::Z}) {
                auto rep = verify_commutation(cd, ring, ring == Ring::Z ? S.get() : nullptr);
                CHECK_MESSAGE(rep.ok(), std::string(serialize(d) + rep.chain_map.witness + rep.homotopy.witness));
            }
            (cd.is_switch ? sw : comm)++;
        }
    }
    CHECK(comm >= 10);
    CHECK(sw >= 5);
}

TEST_CASE("stabilizing the one-cell unknot gives the 2x2 grid") {
    Diagram u{1, 0, 1, {{0, 0}}, {{0, 0}}};
    auto st = stabilize(u, 0, StabKind::X_SW);
    CHECK(st.after.n == 2);
    CHECK(translation_representative(st.after) == translation_representative(unknot2()));
    Diagram five{5, 2, 1, {{0, 0}}, {{2, 0}}};
    CHECK(generator_count(five) == 5);
    CHECK(generator_count(stabilize(five, 0, StabKind::X_SW).after) == 50);
}

TEST_CASE("every stabilization kind is undone by destabilization") {
    std::vector<Diagram> ds{Diagram{1, 0, 1, {{0, 0}}, {{0, 0}}}, Diagram{3, 1, 1, {{0, 0}}, {{2, 0}}}, l52()};
    for (auto& d : n2_exhaustive(2)) ds.push_back(d);
    for (auto& d : ds)
        for (auto kind : all_kinds)
            for (int m = 0; m < d.n; ++m) {
                auto st = stabilize(d, m, kind);
                CHECK(validate(st.after).empty());
                CHECK(st.after.n == d.n + 1);
                CHECK(component_count(st.after) == component_count(d));
                CHECK(same_up_to_relabeling(destabilize(st.after, st.row), d));
                CHECK(to_string(parse_stab_kind(to_string(kind))) == to_string(kind));
            }
    CHECK_THROWS_AS(destabilize(l52(), 0), Error);
    CHECK_THROWS_AS(stabilize(l52(), 3, StabKind::X_SW), Error);
}

TEST_CASE("stabilization splitting contracts") {
    std::vector<std::pair<Diagram, StabKind>> cases{{Diagram{1, 0, 1, {{0, 0}}, {{0, 0}}}, StabKind::X_SW},
                                                    {Diagram{2, 1, 1, {{0, 0}}, {{1, 0}}}, StabKind::X_NE},
                                                    {unknot2(), StabKind::X_SW},
                                                    {unknot2(), StabKind::X_NE}};
    auto c2 = n2_exhaustive(2);
    cases.push_back({c2[3], StabKind::X_SW});
    cases.push_back({c2[7], StabKind::X_NE});
    for (auto& [d, kind] : cases) {
        auto st = stabilize(d, 0, kind);
        auto sp = stabilization_split(st);
        CHECK(sp.I.size() == generator_count(d));
        CHECK(sp.I.size() + sp.N.size() == generator_count(st.after));
        auto Sa = solved_signs(GridShape::of(st.after));
        for (Ring ring : {Ring::F2, Ring::Z}) {
            auto rep = verify_stabilization(sp, ring, ring == Ring::Z ? Sa.get() : nullptr);
            CHECK_MESSAGE(rep.e_grading.ok, rep.e_grading.witness);
            CHECK_MESSAGE(rep.e_chain.ok, rep.e_chain.witness);
            CHECK_MESSAGE(rep.phi_degree.ok, rep.phi_degree.witness);
            CHECK_MESSAGE(rep.phi_chain.ok, rep.phi_chain.witness);
            CHECK_MESSAGE(rep.phi_On_chain.ok, rep.phi_On_chain.witness);
            CHECK_MESSAGE(rep.inverse.ok, rep.inverse.witness);
            CHECK_MESSAGE(rep.homotopy.ok, rep.homotopy.witness);
            CHECK_MESSAGE(rep.square.ok, rep.square.witness);
            CHECK_MESSAGE(rep.cone.ok, rep.cone.witness);
        }
        // No differential from N to I.
        auto G = build_complex(st.after, Ring::F2);
        std::set<std::size_t> I(sp.I.begin(), sp.I.end());
        for (auto s : sp.N)
            for (auto& [t, p] : G.C.diff.column(s)) CHECK(!I.count(t));
    }
    auto st = stabilize(unknot2(), 0, StabKind::O_SW);
    CHECK_THROWS_AS(stabilization_maps(stabilization_split(st), Ring::F2, nullptr), Error);
}

TEST_CASE("L(5,2) example stabilization split sizes") {
    auto d = l52();
    auto sp = stabilization_split(stabilize(d, 1, StabKind::X_SW));
    CHECK(sp.I.size() == 750);
    CHECK(sp.I.size() + sp.N.size() == 15000);
    for (std::size_t k = 0; k < sp.I.size(); k += 97) {
        auto& x = sp.gens[sp.I[k]];
        CHECK(sp.st.contains_c(x));
        CHECK(sp.st.insert(sp.st.remove(x)) == x);
    }
}

TEST_CASE("tilde homology after stabilization is the old one tensored with two shifted copies") {
    std::vector<Diagram> ds{Diagram{1, 0, 1, {{0, 0}}, {{0, 0}}}, Diagram{3, 1, 1, {{0, 0}}, {{1, 0}}}, unknot2()};
    for (auto& d : n2_exhaustive(2)) ds.push_back(d);
    for (auto& d : ds)
        for (auto kind : {StabKind::X_SW, StabKind::O_NE}) {
            auto st = stabilize(d, 0, kind);
            for (Ring ring : {Ring::F2, Ring::Z}) {
                auto Sb = solved_signs(GridShape::of(d)), Sa = solved_signs(GridShape::of(st.after));
                auto Hb = homology(tilde(build_complex(d, ring, ring == Ring::Z ? Sb.get() : nullptr).C));
                auto Ha = homology(tilde(build_complex(st.after, ring, ring == Ring::Z ? Sa.get() : nullptr).C));
                auto want = flatten(Hb);
                for (auto& [k, h] : shift_table(Hb, Rational(-1), Rational(-1))) {
                    auto& w = want[k];
                    w.first += h.rank;
                    w.second.insert(w.second.end(), h.torsion.begin(), h.torsion.end());
                }
                CHECK(flatten(Ha) == want);
            }
        }
}

TEST_CASE("stabilization kinds agree up to switches and commutations") {
    std::vector<Diagram> ds{Diagram{1, 0, 1, {{0, 0}}, {{0, 0}}}, Diagram{2, 1, 1, {{0, 0}}, {{1, 0}}}};
    auto c2 = n2_exhaustive(1);
    ds.insert(ds.end(), c2.begin(), c2.end());
    for (auto& d : ds) {
        auto st = [&](StabKind k) { return stabilize(d, 0, k).after; };
        auto sw1 = find_move_path(st(StabKind::X_SW), st(StabKind::X_SE), 1, true);
        REQUIRE(sw1.has_value());
        auto sw2 = find_move_path(st(StabKind::X_NE), st(StabKind::X_NW), 1, true);
        REQUIRE(sw2.has_value());
        for (auto [o, x] : {std::pair{StabKind::O_NE, StabKind::X_SW}, std::pair{StabKind::O_SE, StabKind::X_NW},
                            std::pair{StabKind::O_NW, StabKind::X_SE}, std::pair{StabKind::O_SW, StabKind::X_NE}}) {
            auto path = find_move_path(st(x), st(o), 4, false);
            CHECK_MESSAGE(path.has_value(), std::string(to_string(o) + " from " + to_string(x)));
            if (!path) continue;
            for (auto& m : *path) CHECK((m.type == Move::Type::CommuteCols || m.type == Move::Type::CommuteRows));
        }
    }
    CHECK(!find_move_path(unknot2(), l52(), 3, true).has_value());
}

TEST_CASE("move scripts") {
    auto moves = parse_moves("# demo\ncommute-cols 1\nswitch-rows 0\nstab X:SW 2\ndestab 3\ncommute-rows 2\n");
    REQUIRE(moves.size() == 5);
    CHECK(moves[0].type == Move::Type::CommuteCols);
    CHECK(moves[0].index == 1);
    CHECK(moves[2].type == Move::Type::Stab);
    CHECK(moves[2].kind == StabKind::X_SW);
    CHECK(moves[2].index == 2);
    for (auto& m : moves) {
        auto again = parse_moves(to_string(m));
        REQUIRE(again.size() == 1);
        CHECK(to_string(again[0]) == to_string(m));
    }
    CHECK_THROWS_AS(parse_moves("twist 3\n"), Error);
    CHECK_THROWS_AS(parse_moves("stab Q:SW 0\n"), Error);
    auto d = l52();
    auto e = apply_move(d, parse_moves("stab X:SW 0")[0]);
    CHECK(e.n == 4);
    auto st = stabilize(d, 0, StabKind::X_SW);
    CHECK(same_up_to_relabeling(apply_move(e, Move{Move::Type::Destab, StabKind::X_SW, st.row}), d));
}
