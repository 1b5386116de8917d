#include "lensgrid/poly.hpp"

#include <numeric>
#include <stdexcept>

namespace lensgrid {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

int mono_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

std::string mono_string(const Monomial& m) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += "V" + std::to_string(i);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

void Poly::add(const Monomial& m, long long c, Ring ring) {
    if (ring == Ring::F2) c &= 1;
    if (!c) return;
    auto [it, fresh] = terms.emplace(m, c);
    if (fresh) return;
    it->second = ring == Ring::F2 ? (it->second ^ 1) : it->second + c;
    if (it->second == 0) terms.erase(it);
}

void Poly::add(const Poly& p, long long scale, Ring ring) {
    for (auto& [m, c] : p.terms) add(m, c * scale, ring);
}

Poly Poly::times(const Poly& o, Ring ring) const {
    Poly r;
    for (auto& [m1, c1] : terms)
        for (auto& [m2, c2] : o.terms) r.add(mono_mul(m1, m2), c1 * c2, ring);
    return r;
}

std::string Poly::str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (auto& [m, c] : terms) {
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        long long a = c < 0 ? -c : c;
        if (a != 1) s += std::to_string(a) + "*";
        s += mono_string(m);
    }
    return s;
}

LinearMap::LinearMap(std::size_t nsrc, std::size_t ndst, int nvars, Ring ring)
    : cols_(nsrc), ndst_(ndst), nvars_(nvars), ring_(ring) {}

LinearMap LinearMap::identity(std::size_t n, int nvars, Ring ring, long long c) {
    LinearMap m(n, n, nvars, ring);
    for (std::size_t i = 0; i < n; ++i) m.add(i, i, Monomial(nvars, 0), c);
    return m;
}

LinearMap LinearMap::variable(std::size_t n, int nvars, Ring ring, int var, long long c) {
    LinearMap m(n, n, nvars, ring);
    Monomial v(nvars, 0);
    v[var] = 1;
    for (std::size_t i = 0; i < n; ++i) m.add(i, i, v, c);
    return m;
}

void LinearMap::add(std::size_t src, std::size_t dst, const Monomial& m, long long c) {
    if (src >= cols_.size() || dst >= ndst_) throw std::out_of_range("LinearMap::add");
    if (static_cast<int>(m.size()) != nvars_) throw std::invalid_argument("LinearMap::add: monomial size");
    auto& col = cols_[src];
    auto& p = col[dst];
    p.add(m, c, ring_);
    if (p.zero()) col.erase(dst);
}

void LinearMap::add(std::size_t src, std::size_t dst, const Poly& q, long long scale) {
    if (src >= cols_.size() || dst >= ndst_) throw std::out_of_range("LinearMap::add");
    auto& col = cols_[src];
    auto& p = col[dst];
    p.add(q, scale, ring_);
    if (p.zero()) col.erase(dst);
}

LinearMap LinearMap::after(const LinearMap& f) const {
    if (f.ndst() != nsrc()) throw std::invalid_argument("LinearMap::after: dimension mismatch");
    if (f.nvars_ != nvars_) throw std::invalid_argument("LinearMap::after: variable mismatch");
    LinearMap r(f.nsrc(), ndst_, nvars_, ring_);
    for (std::size_t s = 0; s < f.nsrc(); ++s) {
        auto& out = r.cols_[s];
        for (auto& [mid, p1] : f.cols_[s])
            for (auto& [dst, p2] : cols_[mid]) out[dst].add(p2.times(p1, ring_), 1, ring_);
        for (auto it = out.begin(); it != out.end();) {
            if (it->second.zero()) it = out.erase(it);
            else ++it;
        }
    }
    return r;
}

LinearMap LinearMap::plus(const LinearMap& o, long long scale) const {
    if (o.nsrc() != nsrc() || o.ndst_ != ndst_) throw std::invalid_argument("LinearMap::plus: dimension mismatch");
    LinearMap r = *this;
    for (std::size_t s = 0; s < o.nsrc(); ++s)
        for (auto& [dst, p] : o.cols_[s]) r.add(s, dst, p, scale);
    return r;
}

LinearMap LinearMap::scaled(long long c) const {
    LinearMap r(nsrc(), ndst_, nvars_, ring_);
    for (std::size_t s = 0; s < nsrc(); ++s)
        for (auto& [dst, p] : cols_[s]) r.add(s, dst, p, c);
    return r;
}

LinearMap LinearMap::reduced(Ring rg) const {
    LinearMap r(nsrc(), ndst_, nvars_, rg);
    for (std::size_t s = 0; s < nsrc(); ++s)
        for (auto& [dst, p] : cols_[s]) r.add(s, dst, p, 1);
    return r;
}

LinearMap LinearMap::specialize(const std::vector<int>& zeroed) const {
    LinearMap r(nsrc(), ndst_, nvars_, ring_);
    for (std::size_t s = 0; s < nsrc(); ++s)
        for (auto& [dst, p] : cols_[s])
            for (auto& [m, c] : p.terms) {
                bool keep = true;
                for (int v : zeroed)
                    if (m[v]) keep = false;
                if (keep) r.add(s, dst, m, c);
            }
    return r;
}

LinearMap LinearMap::with_vars(int nvars) const {
    LinearMap r(nsrc(), ndst_, nvars, ring_);
    for (std::size_t s = 0; s < nsrc(); ++s)
        for (auto& [dst, p] : cols_[s])
            for (auto& [m, c] : p.terms) {
                Monomial mm(m);
                mm.resize(nvars, 0);
                r.add(s, dst, mm, c);
            }
    return r;
}

LinearMap LinearMap::block(const std::vector<std::size_t>& src_idx, const std::vector<std::size_t>& dst_idx) const {
    std::vector<std::int64_t> dpos(ndst_, -1);
    for (std::size_t k = 0; k < dst_idx.size(); ++k) dpos[dst_idx[k]] = static_cast<std::int64_t>(k);
    LinearMap r(src_idx.size(), dst_idx.size(), nvars_, ring_);
    for (std::size_t k = 0; k < src_idx.size(); ++k)
        for (auto& [dst, p] : cols_[src_idx[k]])
            if (dpos[dst] >= 0) r.add(k, static_cast<std::size_t>(dpos[dst]), p, 1);
    return r;
}

bool LinearMap::is_zero() const {
    for (auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

bool LinearMap::first_difference(const LinearMap& o, Witness& w) const {
    if (o.nsrc() != nsrc() || o.ndst_ != ndst_) throw std::invalid_argument("LinearMap: dimension mismatch");
    for (std::size_t s = 0; s < nsrc(); ++s) {
        if (cols_[s] == o.cols_[s]) continue;
        std::map<std::size_t, Poly> diff = cols_[s];
        for (auto& [dst, p] : o.cols_[s]) {
            diff[dst].add(p, -1, ring_);
            if (diff[dst].zero()) diff.erase(dst);
        }
        for (auto& [dst, p] : diff)
            if (!p.zero()) {
                w = {s, dst, p};
                return true;
            }
    }
    return false;
}

bool LinearMap::operator==(const LinearMap& o) const {
    Witness w;
    return !first_difference(o, w);
}

std::size_t LinearMap::nonzeros() const {
    std::size_t k = 0;
    for (auto& c : cols_) k += c.size();
    return k;
}

}  // namespace lensgrid
