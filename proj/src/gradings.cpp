#include "lensgrid/gradings.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace lensgrid {

std::string to_string(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

namespace {

// Doubled coordinates so that centers and corners compare exactly.
std::vector<Cell> doubled(const std::vector<Cell>& pts, bool centers) {
    std::vector<Cell> out;
    out.reserve(pts.size());
    int o = centers ? 1 : 0;
    for (auto c : pts) out.push_back({2 * c.c1 + o, 2 * c.c2 + o});
    return out;
}

std::map<std::tuple<int, int, int>, Rational>& d_cache() {
    static std::map<std::tuple<int, int, int>, Rational> m;
    return m;
}
std::shared_mutex& d_mutex() {
    static std::shared_mutex m;
    return m;
}

}  // namespace

long long I_count(const std::vector<Cell>& A, const std::vector<Cell>& B) {
    long long c = 0;
    for (auto& a : A)
        for (auto& b : B)
            if (a.c1 < b.c1 && a.c2 < b.c2) ++c;
    return c;
}

Rational d_invariant(int p, int q, int i) {
    if (p == 1 && q == 0 && i == 0) return Rational(0);
    if (!(0 < q && q < p) || i < 0) throw Error("d_invariant: arguments not normalized");
    auto key = std::make_tuple(p, q, i);
    {
        std::shared_lock lk(d_mutex());
        auto it = d_cache().find(key);
        if (it != d_cache().end()) return it->second;
    }
    BigInt s = BigInt(2 * i + 1 - p - q);
    Rational head(BigInt(p) * q - s * s, BigInt(4) * p * q);
    Rational val = head - d_invariant(q, p % q, i % q);
    std::unique_lock lk(d_mutex());
    d_cache().emplace(key, val);
    return val;
}

Rational maslov_correction(int p, int q) {
    if (p == 1) return Rational(0);
    int qq = static_cast<int>(pmod(q, p));
    int ii = static_cast<int>(pmod(q - 1, p));
    return d_invariant(p, qq, ii);
}

int spin_c_tilde(const Diagram& d, const Generator& x) {
    auto xo = special_generator_xO(d);
    long long s = 0;
    for (int i = 0; i < d.n; ++i) s += x.a[i] - xo.a[i];
    return static_cast<int>(pmod(s, d.p));
}

int spin_c(const Diagram& d, const Generator& x) {
    return static_cast<int>(pmod(spin_c_tilde(d, x) + d.q - 1, d.p));
}

MaslovParts maslov_parts(const Diagram& d, const Generator& x, bool use_X) {
    auto xt = doubled(lift_points(d.p, d.q, d.n, generator_points(d, x)), false);
    auto mt = doubled(lift_points(d.p, d.q, d.n, use_X ? d.X : d.O), true);
    return {I_count(xt, xt), I_count(xt, mt), I_count(mt, xt), I_count(mt, mt)};
}

Rational maslov(const Diagram& d, const Generator& x) {
    return Rational(maslov_parts(d, x, false).tilde(), d.p) + maslov_correction(d.p, d.q) + 1;
}

Rational maslov_X(const Diagram& d, const Generator& x) {
    return Rational(maslov_parts(d, x, true).tilde(), d.p) + maslov_correction(d.p, d.q) + 1;
}

Rational alexander(const Diagram& d, const Generator& x) {
    return (maslov(d, x) - maslov_X(d, x) - (d.n - component_count(d))) / 2;
}

Grader::Grader(const Diagram& d) : d_(d) {
    Ot_ = doubled(lift_points(d.p, d.q, d.n, d.O), true);
    Xt_ = doubled(lift_points(d.p, d.q, d.n, d.X), true);
    OO_ = I_count(Ot_, Ot_);
    XX_ = I_count(Xt_, Xt_);
    corr_ = maslov_correction(d.p, d.q);
    ell_ = component_count(d);
    xO_ = special_generator_xO(d);
}

Rational Grader::M(const Generator& x) const {
    auto xt = doubled(lift_points(d_.p, d_.q, d_.n, generator_points(d_, x)), false);
    long long t = I_count(xt, xt) - I_count(xt, Ot_) - I_count(Ot_, xt) + OO_;
    return Rational(t, d_.p) + corr_ + 1;
}

Rational Grader::MX(const Generator& x) const {
    auto xt = doubled(lift_points(d_.p, d_.q, d_.n, generator_points(d_, x)), false);
    long long t = I_count(xt, xt) - I_count(xt, Xt_) - I_count(Xt_, xt) + XX_;
    return Rational(t, d_.p) + corr_ + 1;
}

Grading Grader::operator()(const Generator& x) const {
    auto xt = doubled(lift_points(d_.p, d_.q, d_.n, generator_points(d_, x)), false);
    long long xx = I_count(xt, xt);
    long long mo = xx - I_count(xt, Ot_) - I_count(Ot_, xt) + OO_;
    long long mx = xx - I_count(xt, Xt_) - I_count(Xt_, xt) + XX_;
    Grading g;
    long long s = 0;
    for (int i = 0; i < d_.n; ++i) s += x.a[i] - xO_.a[i];
    g.S = static_cast<int>(pmod(s + d_.q - 1, d_.p));
    g.M = Rational(mo, d_.p) + corr_ + 1;
    Rational MX = Rational(mx, d_.p) + corr_ + 1;
    g.A = (g.M - MX - (d_.n - ell_)) / 2;
    return g;
}

Grading grading(const Diagram& d, const Generator& x) { return Grader(d)(x); }

int maslov_parity(const Rational& M) {
    BigInt num = boost::multiprecision::numerator(M);
    BigInt den = boost::multiprecision::denominator(M);
    BigInt f = num / den;
    if (num < 0 && f * den != num) f -= 1;
    return static_cast<int>(((f % 2) + 2) % 2);
}

}  // namespace lensgrid
