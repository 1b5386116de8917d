#include "lensgrid/complex.hpp"

#include <algorithm>
#include <sstream>

namespace lensgrid {

std::vector<int> TrigradedComplex::active_vars() const {
    std::vector<int> out;
    for (int v = 0; v < nvars; ++v)
        if (std::find(zeroed.begin(), zeroed.end(), v) == zeroed.end()) out.push_back(v);
    return out;
}

Monomial o_monomial(const Parallelogram& r) { return Monomial(r.nO.begin(), r.nO.end()); }

LinearMap count_parallelograms(const Diagram& d, const std::vector<Generator>& gens, Ring ring, int nvars,
                               const ParallelogramFilter& accept, const ParallelogramWeight& weight,
                               const SignAssignment* S) {
    if (ring == Ring::Z && !S) throw Error("integral coefficients need a sign assignment");
    GeneratorSpace sp(d);
    LinearMap f(gens.size(), gens.size(), nvars, ring);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        for (auto& r : empty_parallelograms_from(d, gens[k])) {
            if (!accept(r)) continue;
            long long c = ring == Ring::Z ? S->sign(r) : 1;
            f.add(k, sp.index_of(r.terminal), weight(r), c);
        }
    }
    return f;
}

std::vector<Grading> grade_all(const Diagram& d, const std::vector<Generator>& gens) {
    Grader g(d);
    std::vector<Grading> out;
    out.reserve(gens.size());
    for (auto& x : gens) out.push_back(g(x));
    return out;
}

GridComplex build_complex(const Diagram& d, Ring ring, const SignAssignment* S) {
    require_valid(d);
    GridComplex G;
    G.d = d;
    G.gens = enumerate_generators(d);
    G.C.ring = ring;
    G.C.nvars = d.n;
    G.C.grading = grade_all(d, G.gens);
    auto comps = link_components(d);
    for (int i = 0; i < d.n; ++i) G.C.var_component.push_back(comps[d.n + i]);
    G.C.diff = count_parallelograms(
        d, G.gens, ring, d.n, [](const Parallelogram& r) { return r.total_X() == 0; }, o_monomial, S);
    return G;
}

namespace {

std::string describe(std::size_t src, std::size_t dst, const Poly& p) {
    std::ostringstream os;
    os << "source " << src << " -> target " << dst << ": " << p.str();
    return os.str();
}

}  // namespace

CheckResult verify_d_squared(const TrigradedComplex& C) {
    auto dd = C.diff.after(C.diff);
    LinearMap zero(C.size(), C.size(), C.nvars, C.ring);
    LinearMap::Witness w;
    if (dd.first_difference(zero, w)) return {false, describe(w.src, w.dst, w.value)};
    return {};
}

CheckResult check_map_degree(const LinearMap& f, const std::vector<Grading>& src, const std::vector<Grading>& dst,
                             const Rational& dM, const Rational& dA) {
    for (std::size_t s = 0; s < f.nsrc(); ++s)
        for (auto& [t, p] : f.column(s))
            for (auto& [m, c] : p.terms) {
                int deg = mono_degree(m);
                bool ok = src[s].S == dst[t].S && dst[t].M - 2 * deg == src[s].M + dM &&
                          dst[t].A - deg == src[s].A + dA;
                if (!ok) {
                    Poly q;
                    q.add(m, c, f.ring());
                    return {false, "grading mismatch at " + describe(s, t, q) + " (M " + to_string(src[s].M) +
                                       " -> " + to_string(dst[t].M) + ", A " + to_string(src[s].A) + " -> " +
                                       to_string(dst[t].A) + ")"};
                }
            }
    return {};
}

CheckResult check_equal(const LinearMap& lhs, const LinearMap& rhs, const std::string& what) {
    LinearMap::Witness w;
    if (lhs.first_difference(rhs, w)) return {false, what + ": difference at " + describe(w.src, w.dst, w.value)};
    return {};
}

TrigradedComplex specialize(const TrigradedComplex& C, const std::vector<int>& zeroed) {
    TrigradedComplex R = C;
    for (int v : zeroed)
        if (std::find(R.zeroed.begin(), R.zeroed.end(), v) == R.zeroed.end()) R.zeroed.push_back(v);
    std::sort(R.zeroed.begin(), R.zeroed.end());
    R.diff = C.diff.specialize(R.zeroed);
    return R;
}

TrigradedComplex tilde(const TrigradedComplex& C) {
    std::vector<int> all(C.nvars);
    for (int i = 0; i < C.nvars; ++i) all[i] = i;
    return specialize(C, all);
}

TrigradedComplex hat_type(const TrigradedComplex& C) {
    std::vector<int> zero;
    std::vector<int> seen;
    for (int v = 0; v < C.nvars; ++v) {
        int c = C.var_component.empty() ? 0 : C.var_component[v];
        if (std::find(seen.begin(), seen.end(), c) != seen.end()) zero.push_back(v);
        else seen.push_back(c);
    }
    return specialize(C, zero);
}

std::pair<int, int> connector_os(const Diagram& d, int a) {
    if (a < 0 || a >= d.n) throw Error("no such X marking");
    int i = o_in_row(d, d.X[a].c2);
    int j = -1;
    for (int k = 0; k < d.n; ++k)
        if (pmod(d.O[k].c1, d.n) == pmod(d.X[a].c1, d.n)) j = k;
    if (j < 0) throw Error("X marking is not a connector");
    return {i, j};
}

LinearMap phi_X_marker(const Diagram& d, const std::vector<Generator>& gens, Ring ring, const SignAssignment* S,
                       int a) {
    connector_os(d, a);
    return count_parallelograms(
        d, gens, ring, d.n,
        [a](const Parallelogram& r) {
            for (int k = 0; k < static_cast<int>(r.nX.size()); ++k)
                if (r.nX[k] != (k == a ? 1 : 0)) return false;
            return true;
        },
        o_monomial, S);
}

TrigradedComplex adjoin_variable(const TrigradedComplex& C, int component) {
    TrigradedComplex R = C;
    R.nvars = C.nvars + 1;
    R.diff = C.diff.with_vars(R.nvars);
    R.var_component.push_back(component);
    return R;
}

TrigradedComplex mapping_cone(const TrigradedComplex& A, const TrigradedComplex& B, const LinearMap& f,
                              const Rational& dM, const Rational& dA) {
    if (A.nvars != B.nvars || A.ring != B.ring) throw Error("mapping_cone: incompatible complexes");
    if (f.nsrc() != A.size() || f.ndst() != B.size()) throw Error("mapping_cone: map has wrong shape");
    auto chk = check_map_degree(f, A.grading, B.grading, dM, dA);
    if (!chk.ok) throw Error("mapping_cone: map is not homogeneous: " + chk.witness);
    auto fd = f.after(A.diff), df = B.diff.after(f);
    auto cm = check_equal(fd, df, "mapping_cone: not a chain map");
    if (!cm.ok) throw Error(cm.witness);
    TrigradedComplex R;
    R.ring = A.ring;
    R.nvars = A.nvars;
    R.var_component = A.var_component;
    R.zeroed = A.zeroed;
    std::size_t na = A.size(), nb = B.size();
    for (auto g : A.grading) {
        g.M += dM + 1;
        g.A += dA;
        R.grading.push_back(g);
    }
    R.grading.insert(R.grading.end(), B.grading.begin(), B.grading.end());
    R.diff = LinearMap(na + nb, na + nb, R.nvars, R.ring);
    for (std::size_t s = 0; s < na; ++s) {
        for (auto& [t, p] : A.diff.column(s)) R.diff.add(s, t, p, -1);
        for (auto& [t, p] : f.column(s)) R.diff.add(s, na + t, p, 1);
    }
    for (std::size_t s = 0; s < nb; ++s)
        for (auto& [t, p] : B.diff.column(s)) R.diff.add(na + s, na + t, p, 1);
    return R;
}

LinearMap cone_induced_map(const LinearMap& f, const LinearMap& g, const LinearMap& alpha, const LinearMap& beta) {
    auto chk = check_equal(beta.after(f), g.after(alpha), "cone_induced_map: square does not commute");
    if (!chk.ok) throw Error(chk.witness);
    std::size_t na = alpha.nsrc(), nb = beta.nsrc(), ma = alpha.ndst(), mb = beta.ndst();
    LinearMap R(na + nb, ma + mb, alpha.nvars(), alpha.ring());
    for (std::size_t s = 0; s < na; ++s)
        for (auto& [t, p] : alpha.column(s)) R.add(s, t, p, 1);
    for (std::size_t s = 0; s < nb; ++s)
        for (auto& [t, p] : beta.column(s)) R.add(na + s, ma + t, p, 1);
    return R;
}

}  // namespace lensgrid
