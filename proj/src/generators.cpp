#include "lensgrid/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

namespace lensgrid {

std::vector<Cell> generator_points(const Diagram& d, const Generator& x) {
    std::vector<Cell> pts(d.n);
    for (int i = 0; i < d.n; ++i) pts[i] = {x.a[i] * d.n + x.sigma[i], i};
    return pts;
}

Generator generator_from_points(const Diagram& d, const std::vector<Cell>& pts) {
    if (static_cast<int>(pts.size()) != d.n) throw Error("generator needs n points");
    Generator g;
    g.sigma.assign(d.n, -1);
    g.a.assign(d.n, 0);
    std::vector<bool> col(d.n, false);
    for (auto c : pts) {
        c = reduce_point(d, c.c1, c.c2);
        if (g.sigma[c.c2] >= 0) throw Error("two generator points in one row");
        int j = c.c1 % d.n;
        if (col[j]) throw Error("two generator points in one column");
        col[j] = true;
        g.sigma[c.c2] = j;
        g.a[c.c2] = c.c1 / d.n;
    }
    return g;
}

bool is_generator(const Diagram& d, const Generator& x) {
    if (static_cast<int>(x.sigma.size()) != d.n || static_cast<int>(x.a.size()) != d.n) return false;
    std::vector<bool> seen(d.n, false);
    for (int i = 0; i < d.n; ++i) {
        if (x.sigma[i] < 0 || x.sigma[i] >= d.n || seen[x.sigma[i]]) return false;
        seen[x.sigma[i]] = true;
        if (x.a[i] < 0 || x.a[i] >= d.p) return false;
    }
    return true;
}

std::string to_string(const Generator& x) {
    std::string s;
    for (size_t i = 0; i < x.sigma.size(); ++i) s += (i ? "," : "") + std::to_string(x.sigma[i]);
    s += "/";
    for (size_t i = 0; i < x.a.size(); ++i) s += (i ? "," : "") + std::to_string(x.a[i]);
    return s;
}

Generator parse_generator(int n, const std::string& perm, const std::string& pcoords) {
    auto split = [](const std::string& s) {
        std::vector<int> v;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
        return v;
    };
    Generator g{split(perm), split(pcoords)};
    if (static_cast<int>(g.sigma.size()) != n || static_cast<int>(g.a.size()) != n)
        throw Error("generator must have n entries");
    return g;
}

std::uint64_t generator_count(const Diagram& d) {
    constexpr auto MAX = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t c = 1;
    auto mul = [&](std::uint64_t f) {
        if (c > MAX / f) c = MAX;
        else c *= f;
    };
    for (int i = 2; i <= d.n; ++i) mul(i);
    for (int i = 0; i < d.n; ++i) mul(d.p);
    return c;
}

std::uint64_t generator_ceiling() {
    if (const char* e = std::getenv("LENSGRID_CEILING")) {
        try {
            return std::stoull(e);
        } catch (const std::exception&) {
        }
    }
    return 10'000'000ull;
}

GeneratorSpace::GeneratorSpace(const Diagram& d) : d_(d) {
    auto cnt = generator_count(d);
    if (cnt > generator_ceiling())
        throw Error("generator count " + std::to_string(cnt) + " exceeds ceiling " +
                    std::to_string(generator_ceiling()));
    std::vector<int> s(d.n);
    std::iota(s.begin(), s.end(), 0);
    do perms_.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    for (int i = 0; i < d.n; ++i) pn_ *= d.p;
    size_ = perms_.size() * pn_;
}

Generator GeneratorSpace::at(std::size_t idx) const {
    Generator g;
    g.sigma = perms_[idx / pn_];
    g.a.assign(d_.n, 0);
    std::size_t r = idx % pn_;
    for (int i = d_.n - 1; i >= 0; --i) {
        g.a[i] = static_cast<int>(r % d_.p);
        r /= d_.p;
    }
    return g;
}

std::size_t GeneratorSpace::index_of(const Generator& x) const {
    // Lehmer rank of sigma.
    std::size_t rank = 0;
    int n = d_.n;
    for (int i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (x.sigma[j] < x.sigma[i]) ++smaller;
        std::size_t f = 1;
        for (int k = 2; k <= n - 1 - i; ++k) f *= k;
        rank += smaller * f;
    }
    std::size_t r = 0;
    for (int i = 0; i < n; ++i) r = r * d_.p + x.a[i];
    return rank * pn_ + r;
}

std::vector<Generator> enumerate_generators(const Diagram& d) {
    GeneratorSpace sp(d);
    std::vector<Generator> out;
    out.reserve(sp.size());
    for (std::size_t i = 0; i < sp.size(); ++i) out.push_back(sp.at(i));
    return out;
}

void for_each_generator(const Diagram& d, const std::function<void(const Generator&)>& f) {
    GeneratorSpace sp(d);
    for (std::size_t i = 0; i < sp.size(); ++i) f(sp.at(i));
}

Generator special_generator_xO(const Diagram& d) {
    std::vector<Cell> pts;
    for (auto& o : d.O) pts.push_back(o);
    return generator_from_points(d, pts);
}

int Parallelogram::total_O() const { return std::accumulate(nO.begin(), nO.end(), 0); }
int Parallelogram::total_X() const { return std::accumulate(nX.begin(), nX.end(), 0); }

bool rect_embedded(int p, int q, int n, int w, int h) {
    long long N = static_cast<long long>(n) * p;
    for (long long t = -(p - 1); t <= p - 1; ++t) {
        if (t == 0) continue;
        if (std::llabs(n * t) >= h) continue;
        long long m = pmod(static_cast<long long>(n) * q * t, N);
        if (m < w || N - m < w) return false;
    }
    return true;
}

namespace {

// t range with lo <= y + n t <= hi.
inline std::pair<long long, long long> t_range(long long y, long long lo, long long hi, int n) {
    long long tmin = -floordiv(y - lo, n);
    long long tmax = floordiv(hi - y, n);
    return {tmin, tmax};
}

}  // namespace

int marking_multiplicity(const Diagram& d, const Rect& r, Cell m) {
    long long N = d.N();
    auto [t0, t1] = t_range(m.c2, r.v, static_cast<long long>(r.v) + r.h - 1, d.n);
    int count = 0;
    for (long long t = t0; t <= t1; ++t) {
        long long dx = pmod(m.c1 + static_cast<long long>(d.n) * d.q * t - r.u, N);
        if (dx <= r.w - 1) ++count;
    }
    return count;
}

bool point_inside(const Diagram& d, const Rect& r, Cell pt) {
    long long N = d.N();
    auto [t0, t1] = t_range(pt.c2, static_cast<long long>(r.v) + 1, static_cast<long long>(r.v) + r.h - 1, d.n);
    for (long long t = t0; t <= t1; ++t) {
        long long dx = pmod(pt.c1 + static_cast<long long>(d.n) * d.q * t - r.u, N);
        if (dx > 0 && dx < r.w) return true;
    }
    return false;
}

std::vector<Parallelogram> parallelograms_from(const Diagram& d, const Generator& x, bool empty_only) {
    std::vector<Parallelogram> out;
    int n = d.n, p = d.p;
    long long N = d.N();
    auto pts = generator_points(d, x);
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            if (r == s) continue;
            const Cell A = pts[r], B = pts[s];
            for (long long t = floordiv(-(s - r), n) + 1;; ++t) {
                long long h = s - r + static_cast<long long>(n) * t;
                if (h <= 0) continue;
                if (h >= N) break;
                long long bx = B.c1 + static_cast<long long>(n) * d.q * t;
                long long w = pmod(bx - A.c1, N);
                Rect R{A.c1, A.c2, static_cast<int>(w), static_cast<int>(h)};
                if (!rect_embedded(p, d.q, n, R.w, R.h)) continue;
                bool empty = true;
                for (int k = 0; k < n && empty; ++k)
                    if (point_inside(d, R, pts[k])) empty = false;
                if (empty_only && !empty) continue;
                Parallelogram P;
                P.initial = x;
                P.row_sw = r;
                P.row_ne = s;
                P.rect = R;
                P.empty = empty;
                auto ypts = pts;
                ypts[r] = reduce_point(d, static_cast<long long>(R.u) + R.w, R.v);
                ypts[s] = reduce_point(d, R.u, static_cast<long long>(R.v) + R.h);
                P.terminal = generator_from_points(d, ypts);
                P.nO.resize(n);
                P.nX.resize(n);
                for (int i = 0; i < n; ++i) {
                    P.nO[i] = marking_multiplicity(d, R, d.O[i]);
                    P.nX[i] = marking_multiplicity(d, R, d.X[i]);
                }
                out.push_back(std::move(P));
            }
        }
    }
    return out;
}

Domain domain_of(const Diagram& d, const Parallelogram& r) {
    Domain D{r.initial, r.terminal, std::vector<int>(static_cast<size_t>(d.N()) * d.n, 0)};
    for (int i = 0; i < r.rect.w; ++i)
        for (int j = 0; j < r.rect.h; ++j) {
            Cell c = reduce_point(d, static_cast<long long>(r.rect.u) + i, static_cast<long long>(r.rect.v) + j);
            D.mult[static_cast<size_t>(c.c2) * d.N() + c.c1] += 1;
        }
    return D;
}

Domain juxtapose(const Domain& a, const Domain& b) {
    if (a.terminal != b.initial) throw Error("juxtapose: endpoint mismatch");
    if (a.mult.size() != b.mult.size()) throw Error("juxtapose: size mismatch");
    Domain D{a.initial, b.terminal, a.mult};
    for (size_t i = 0; i < D.mult.size(); ++i) D.mult[i] += b.mult[i];
    return D;
}

std::vector<int> domain_marking_counts(const Diagram& d, const Domain& D, bool X) {
    const auto& ms = X ? d.X : d.O;
    std::vector<int> out;
    for (auto& m : ms) out.push_back(D.mult[static_cast<size_t>(m.c2) * d.N() + m.c1]);
    return out;
}

std::vector<std::pair<Parallelogram, Parallelogram>> decompositions(const Diagram& d, const Domain& D) {
    std::vector<std::pair<Parallelogram, Parallelogram>> out;
    for (auto& r1 : empty_parallelograms_from(d, D.initial)) {
        auto m1 = domain_of(d, r1);
        bool fits = true;
        for (size_t i = 0; i < m1.mult.size(); ++i)
            if (m1.mult[i] > D.mult[i]) fits = false;
        if (!fits) continue;
        for (auto& r2 : empty_parallelograms_from(d, r1.terminal)) {
            if (r2.terminal != D.terminal) continue;
            if (juxtapose(m1, domain_of(d, r2)).mult == D.mult) out.emplace_back(r1, r2);
        }
    }
    return out;
}

std::string parallelogram_key(const Parallelogram& r) {
    std::ostringstream os;
    os << to_string(r.initial) << "|" << r.row_sw << "|" << r.rect.u << "," << r.rect.v << "," << r.rect.w << ","
       << r.rect.h;
    return os.str();
}

}  // namespace lensgrid
