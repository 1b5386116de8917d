#include "lensgrid/homology.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lensgrid {

namespace {

void monomials_of_degree(const std::vector<int>& vars, int nvars, int deg, std::vector<Monomial>& out) {
    Monomial m(nvars, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == vars.size()) {
            m[vars[i]] = left;
            out.push_back(m);
            m[vars[i]] = 0;
            return;
        }
        for (int e = left; e >= 0; --e) {
            m[vars[i]] = e;
            rec(i + 1, left - e);
        }
        m[vars[i]] = 0;
    };
    if (vars.empty()) {
        if (deg == 0) out.push_back(m);
        return;
    }
    rec(0, deg);
}

bool is_nonneg_integer(const Rational& r, int& out) {
    if (boost::multiprecision::denominator(r) != 1 || r < 0) return false;
    out = static_cast<int>(boost::multiprecision::numerator(r));
    return true;
}

class PieceEngine {
public:
    explicit PieceEngine(const TrigradedComplex& C) : C_(C), active_(C.active_vars()) {}

    using Elem = std::pair<std::size_t, Monomial>;

    const std::vector<Elem>& basis(const PieceKey& k) {
        auto it = bases_.find(k);
        if (it != bases_.end()) return it->second;
        std::vector<Elem> b;
        for (std::size_t x = 0; x < C_.size(); ++x) {
            const auto& g = C_.grading[x];
            if (g.S != k.S) continue;
            int m;
            if (!is_nonneg_integer(g.A - k.A, m)) continue;
            if (g.M - 2 * m != k.M) continue;
            std::vector<Monomial> monos;
            monomials_of_degree(active_, C_.nvars, m, monos);
            for (auto& mm : monos) b.emplace_back(x, std::move(mm));
        }
        return bases_.emplace(k, std::move(b)).first->second;
    }

    // Rank and invariant factors of the differential leaving piece k.
    struct Out {
        std::size_t rank = 0;
        std::vector<BigInt> factors;
    };

    const Out& out_of(const PieceKey& k) {
        auto it = outs_.find(k);
        if (it != outs_.end()) return it->second;
        const auto& src = basis(k);
        PieceKey t{k.S, k.A, k.M - 1};
        const auto& dst = basis(t);
        std::map<Elem, std::size_t> pos;
        for (std::size_t i = 0; i < dst.size(); ++i) pos.emplace(dst[i], i);
        SparseIntMatrix rows(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            const auto& [x, mono] = src[i];
            for (auto& [y, p] : C_.diff.column(x))
                for (auto& [m, c] : p.terms) {
                    Elem e{y, mono_mul(mono, m)};
                    auto f = pos.find(e);
                    if (f == pos.end()) throw Error("homology: differential leaves its trigraded piece");
                    rows[i][f->second] += c;
                }
        }
        Out o;
        if (C_.ring == Ring::F2) {
            o.rank = rank_f2(rows, dst.size());
        } else {
            o.factors = invariant_factors(std::move(rows), dst.size());
            o.rank = o.factors.size();
        }
        return outs_.emplace(k, std::move(o)).first->second;
    }

    PieceHomology at(const PieceKey& k) {
        std::size_t dim = basis(k).size();
        PieceHomology h;
        if (dim == 0) return h;
        const auto& o = out_of(k);
        const auto& i = out_of({k.S, k.A, k.M + 1});
        h.rank = dim - o.rank - i.rank;
        for (auto& f : i.factors)
            if (f > 1) h.torsion.push_back(f);
        return h;
    }

private:
    const TrigradedComplex& C_;
    std::vector<int> active_;
    std::map<PieceKey, std::vector<Elem>> bases_;
    std::map<PieceKey, Out> outs_;
};

std::set<PieceKey> pieces_in(const TrigradedComplex& C, const std::optional<Window>& w) {
    bool polynomial = !C.active_vars().empty();
    if (polynomial && !w) throw Error("homology: a finite window is required for a complex with live variables");
    std::set<PieceKey> keys;
    for (auto& g : C.grading) {
        for (int m = 0;; ++m) {
            PieceKey k{g.S, g.A - m, g.M - 2 * m};
            if (w && (k.A < w->A_lo || k.M < w->M_lo)) break;
            if (!w || (k.A <= w->A_hi && k.M <= w->M_hi)) keys.insert(k);
            if (!polynomial) break;
        }
    }
    return keys;
}

}  // namespace

HomologyTable homology(const TrigradedComplex& C, const std::optional<Window>& window) {
    PieceEngine eng(C);
    HomologyTable t;
    for (auto& k : pieces_in(C, window)) {
        auto h = eng.at(k);
        if (h.rank || !h.torsion.empty()) t.emplace(k, std::move(h));
    }
    return t;
}

std::map<PieceKey, std::size_t> piece_dimensions(const TrigradedComplex& C, const Window& window) {
    PieceEngine eng(C);
    std::map<PieceKey, std::size_t> out;
    for (auto& k : pieces_in(C, window)) out[k] = eng.basis(k).size();
    return out;
}

HomologyTable shift_table(const HomologyTable& t, const Rational& dM, const Rational& dA) {
    HomologyTable r;
    for (auto& [k, h] : t) r.emplace(PieceKey{k.S, k.A + dA, k.M + dM}, h);
    return r;
}

HomologyTable restrict_table(const HomologyTable& t, const Window& w) {
    HomologyTable r;
    for (auto& [k, h] : t)
        if (k.A >= w.A_lo && k.A <= w.A_hi && k.M >= w.M_lo && k.M <= w.M_hi) r.emplace(k, h);
    return r;
}

std::size_t total_rank(const HomologyTable& t) {
    std::size_t s = 0;
    for (auto& [k, h] : t) s += h.rank;
    return s;
}

bool has_torsion(const HomologyTable& t) {
    for (auto& [k, h] : t)
        if (!h.torsion.empty()) return true;
    return false;
}

std::string table_json(const HomologyTable& t) {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (auto& [k, h] : t) {
        if (!first) os << ",";
        first = false;
        os << "{\"S\":" << k.S << ",\"A\":\"" << to_string(k.A) << "\",\"M\":\"" << to_string(k.M)
           << "\",\"rank\":" << h.rank << ",\"torsion\":[";
        for (std::size_t i = 0; i < h.torsion.size(); ++i) os << (i ? "," : "") << h.torsion[i].str();
        os << "]}";
    }
    os << "]";
    return os.str();
}

std::string table_text(const HomologyTable& t) {
    std::ostringstream os;
    for (auto& [k, h] : t) {
        os << "S=" << k.S << " A=" << to_string(k.A) << " M=" << to_string(k.M) << " rank=" << h.rank;
        if (!h.torsion.empty()) {
            os << " torsion=";
            for (std::size_t i = 0; i < h.torsion.size(); ++i) os << (i ? "," : "") << h.torsion[i].str();
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace lensgrid
