#include <algorithm>
#include <array>

#include "lensgrid/homology.hpp"
#include "lensgrid/moves.hpp"

namespace lensgrid {

namespace {

int inverse_mod(int q, int p) {
    if (p == 1) return 0;
    int a = static_cast<int>(pmod(q, p));
    for (int k = 1; k < p; ++k)
        if ((static_cast<long long>(a) * k) % p == 1) return k;
    throw Error("q is not invertible mod p");
}

}  // namespace

Diagram transpose(const Diagram& d) {
    Diagram t;
    t.p = d.p;
    t.n = d.n;
    t.q = inverse_mod(d.q, d.p);
    for (auto& m : d.X) t.X.push_back(reduce_point(t, m.c2, m.c1));
    for (auto& m : d.O) t.O.push_back(reduce_point(t, m.c2, m.c1));
    return t;
}

namespace {

Diagram transpose_back(const Diagram& t, int q) {
    Diagram d = transpose(t);
    d.q = q;
    return d;
}

}  // namespace

int CombinedDiagram::height_of(Cell pt) const {
    int h = height[static_cast<std::size_t>(pt.c2) * before.N() + pt.c1];
    if (h < 0) throw Error("point is not on the shared circle");
    return h;
}

namespace {

struct Placement {
    CombinedDiagram cd;
    bool ties = false;
    bool ok = false;  // some tie order makes the columns non-interleaving
};

// Whether the left-column positions are contiguous on the circle.
bool contiguous(const std::vector<std::pair<int, bool>>& items) {
    auto s = items;
    std::sort(s.begin(), s.end());
    int changes = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i].second && !s[(i + 1) % s.size()].second) ++changes;
    return changes == 1;
}

Placement place(const Diagram& d, int j) {
    require_valid(d);
    if (d.n < 2) throw Error("column moves need grid number at least 2");
    Placement pl;
    CombinedDiagram& cd = pl.cd;
    cd.before = d;
    cd.column = static_cast<int>(pmod(j, d.n));
    int L = cd.column, R = static_cast<int>(pmod(L + 1, d.n));
    cd.circle = R;
    int N = d.N();
    cd.length = 8 * N;
    cd.height.assign(static_cast<std::size_t>(N) * d.n, -1);
    for (int y = 0; y < N; ++y) {
        Cell pt = reduce_point(d, cd.circle, y);
        cd.height[static_cast<std::size_t>(pt.c2) * N + pt.c1] = y;
    }
    // Each marking in the two columns, by (kind, index).
    struct M {
        bool isX;
        int idx;
        bool left;
        int h;
    };
    std::vector<M> ms;
    auto collect = [&](const std::vector<Cell>& v, bool isX) {
        for (int i = 0; i < d.n; ++i) {
            int col = static_cast<int>(pmod(v[i].c1, d.n));
            if (col == L) ms.push_back({isX, i, true, cd.height_of(reduce_point(d, v[i].c1 + 1, v[i].c2))});
            else if (col == R) ms.push_back({isX, i, false, cd.height_of(reduce_point(d, v[i].c1, v[i].c2))});
        }
    };
    collect(d.X, true);
    collect(d.O, false);
    // Tied left/right pairs share a unit segment.
    std::vector<std::pair<int, int>> ties;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (ms[a].left && !ms[b].left && ms[a].h == ms[b].h) ties.emplace_back(a, b);
    pl.ties = !ties.empty();
    std::vector<int> pos(4);
    for (int combo = 0; combo < (1 << ties.size()); ++combo) {
        for (int a = 0; a < 4; ++a) pos[a] = 8 * ms[a].h + 4;
        for (std::size_t t = 0; t < ties.size(); ++t) {
            bool left_first = (combo >> t) & 1;
            pos[ties[t].first] = 8 * ms[ties[t].first].h + (left_first ? 3 : 5);
            pos[ties[t].second] = 8 * ms[ties[t].second].h + (left_first ? 5 : 3);
        }
        std::vector<std::pair<int, bool>> items;
        for (int a = 0; a < 4; ++a) items.emplace_back(pos[a], ms[a].left);
        if (!contiguous(items)) continue;
        pl.ok = true;
        std::sort(items.begin(), items.end());
        int start = -1, end = -1;
        for (std::size_t i = 0; i < 4; ++i) {
            auto prev = items[(i + 3) % 4], next = items[(i + 1) % 4];
            if (items[i].second && !prev.second) start = items[i].first;
            if (items[i].second && !next.second) end = items[i].first;
        }
        cd.cross_b = static_cast<int>(pmod(start - 1, cd.length));
        cd.cross_a = static_cast<int>(pmod(end + 1, cd.length));
        cd.pos_X.assign(d.n, -1);
        cd.pos_O.assign(d.n, -1);
        cd.left_X.assign(d.n, false);
        cd.left_O.assign(d.n, false);
        for (int a = 0; a < 4; ++a) {
            (ms[a].isX ? cd.pos_X : cd.pos_O)[ms[a].idx] = pos[a];
            (ms[a].isX ? cd.left_X : cd.left_O)[ms[a].idx] = ms[a].left;
        }
        break;
    }
    // The exchanged diagram.
    cd.after = d;
    for (int i = 0; i < d.n; ++i) {
        for (auto* v : {&cd.after.X, &cd.after.O}) {
            Cell& c = (*v)[i];
            int col = static_cast<int>(pmod(c.c1, d.n));
            if (col == L) c = reduce_point(d, c.c1 + 1, c.c2);
            else if (col == R) c = reduce_point(d, c.c1 - 1, c.c2);
        }
    }
    cd.is_switch = pl.ties;
    return pl;
}

}  // namespace

bool columns_special(const Diagram& d, int j) { return place(d, j).ties; }

CombinedDiagram build_combined(const Diagram& d, int j) {
    auto pl = place(d, j);
    if (!pl.ok) throw Error("interleaved markings: columns " + std::to_string(pl.cd.column) + " and " +
                            std::to_string(pl.cd.circle) + " cannot be exchanged");
    return pl.cd;
}

Diagram commute_columns(const Diagram& d, int j) {
    auto pl = place(d, j);
    if (pl.ties) throw Error("columns form a special pair; use a switch");
    if (!pl.ok) throw Error("interleaved markings: columns " + std::to_string(pl.cd.column) + " and " +
                            std::to_string(pl.cd.circle) + " cannot be commuted");
    return pl.cd.after;
}

Diagram switch_columns(const Diagram& d, int j) {
    auto pl = place(d, j);
    if (!pl.ties) throw Error("pair not special: no X and O of the two columns share a row in adjacent cells");
    return pl.cd.after;
}

Diagram commute_rows(const Diagram& d, int i) { return transpose_back(commute_columns(transpose(d), i), d.q); }

Diagram switch_rows(const Diagram& d, int i) { return transpose_back(switch_columns(transpose(d), i), d.q); }

std::vector<Polygon> enumerate_polygons(const CombinedDiagram& cd, const Generator& x, PolygonKind kind) {
    const Diagram& d = cd.before;
    int n = d.n, L = cd.length;
    std::vector<Polygon> out;
    for (auto& K : parallelograms_from(d, x, true)) {
        bool left_edge = pmod(K.rect.u, n) == cd.circle;
        bool right_edge = pmod(static_cast<long long>(K.rect.u) + K.rect.w, n) == cd.circle;
        if (!left_edge && !right_edge) continue;
        Cell bottom = left_edge ? reduce_point(d, K.rect.u, K.rect.v)
                                : reduce_point(d, static_cast<long long>(K.rect.u) + K.rect.w, K.rect.v);
        int base = 8 * cd.height_of(bottom), span = 8 * K.rect.h;
        auto rel = [&](int pos) { return static_cast<int>(pmod(pos - base, L)); };
        int ra = rel(cd.cross_a), rb = rel(cd.cross_b);
        bool a_in = ra < span, b_in = rb < span;
        // Whether the boundary runs along gamma at relative position rp.
        int lo = 0, hi = 0;
        switch (kind) {
            case PolygonKind::PentagonBG:
                if (!a_in) continue;
                lo = left_edge ? ra : 0;
                hi = left_edge ? span : ra;
                break;
            case PolygonKind::PentagonGB:
                if (!b_in) continue;
                lo = left_edge ? 0 : rb;
                hi = left_edge ? rb : span;
                break;
            case PolygonKind::Hexagon:
                if (!a_in || !b_in) continue;
                if (left_edge ? ra > rb : rb > ra) continue;
                lo = std::min(ra, rb);
                hi = std::max(ra, rb);
                break;
        }
        Polygon P;
        P.kind = kind;
        P.initial = x;
        P.terminal = K.terminal;
        P.left = right_edge;
        P.nO = K.nO;
        P.nX = K.nX;
        auto adjust = [&](const std::vector<int>& pos, const std::vector<bool>& left, std::vector<int>& cnt) {
            for (int i = 0; i < n; ++i) {
                if (pos[i] < 0) continue;
                int rp = rel(pos[i]);
                if (rp >= span || rp <= lo || rp >= hi) continue;
                cnt[i] += left[i] == left_edge ? 1 : -1;
                if (cnt[i] < 0) throw Error("polygon enumeration produced a negative multiplicity");
            }
        };
        adjust(cd.pos_O, cd.left_O, P.nO);
        adjust(cd.pos_X, cd.left_X, P.nX);
        if (std::any_of(P.nX.begin(), P.nX.end(), [](int v) { return v != 0; })) continue;
        P.R = K;
        out.push_back(std::move(P));
    }
    return out;
}

namespace {

LinearMap polygon_map(const CombinedDiagram& cd, const GridComplex& src, const SignAssignment* S, PolygonKind kind) {
    Ring ring = src.C.ring;
    if (ring == Ring::Z && !S) throw Error("integral coefficients need a sign assignment");
    GeneratorSpace sp(cd.before);
    LinearMap f(src.gens.size(), src.gens.size(), cd.before.n, ring);
    for (std::size_t k = 0; k < src.gens.size(); ++k) {
        int parity = ring == Ring::Z ? maslov_parity(src.C.grading[k].M) : 0;
        for (auto& P : enumerate_polygons(cd, src.gens[k], kind)) {
            long long c = 1;
            if (ring == Ring::Z) {
                c = S->sign(P.R);
                if (kind != PolygonKind::Hexagon) {
                    // (-1)^(M+1) for left pentagons, (-1)^M for right ones.
                    if (parity) c = -c;
                    if (P.left) c = -c;
                }
            }
            f.add(k, sp.index_of(P.terminal), Monomial(P.nO.begin(), P.nO.end()), c);
        }
    }
    return f;
}

}  // namespace

LinearMap phi_beta_gamma(const CombinedDiagram& cd, const GridComplex& before, const SignAssignment* S) {
    return polygon_map(cd, before, S, PolygonKind::PentagonBG);
}

LinearMap phi_gamma_beta(const CombinedDiagram& cd, const GridComplex& after, const SignAssignment* S) {
    return polygon_map(cd, after, S, PolygonKind::PentagonGB);
}

LinearMap h_beta_gamma_beta(const CombinedDiagram& cd, const GridComplex& before, const SignAssignment* S) {
    return polygon_map(cd, before, S, PolygonKind::Hexagon);
}

CommutationReport verify_commutation(const CombinedDiagram& cd, Ring ring, const SignAssignment* S) {
    CommutationReport rep;
    auto G = build_complex(cd.before, ring, S);
    auto Gp = build_complex(cd.after, ring, S);
    auto phi = phi_beta_gamma(cd, G, S);
    auto psi = phi_gamma_beta(cd, Gp, S);
    auto H = h_beta_gamma_beta(cd, G, S);
    rep.chain_map = check_equal(phi.after(G.C.diff), Gp.C.diff.after(phi), "Phi d = d' Phi");
    rep.grading = check_map_degree(phi, G.C.grading, Gp.C.grading, 0, 0);
    if (rep.grading.ok) rep.grading = check_map_degree(psi, Gp.C.grading, G.C.grading, 0, 0);
    std::size_t sz = G.gens.size();
    auto sum = psi.after(phi).plus(G.C.diff.after(H)).plus(H.after(G.C.diff));
    if (ring == Ring::F2) {
        rep.homotopy = check_equal(sum, LinearMap::identity(sz, cd.before.n, ring), "Phi' Phi + dH + Hd = Id");
    } else {
        rep.homotopy = check_equal(sum.plus(LinearMap::identity(sz, cd.before.n, ring)),
                                   LinearMap(sz, sz, cd.before.n, ring), "Id + Phi' Phi + dH + Hd = 0");
    }
    rep.tilde_equal = homology(tilde(G.C)) == homology(tilde(Gp.C));
    return rep;
}

}  // namespace lensgrid
