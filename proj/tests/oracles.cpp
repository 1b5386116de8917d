#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace oracle {

namespace {

long long md(long long a, long long m) { return ((a % m) + m) % m; }

long long fdiv(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

__int128 det_bareiss(std::vector<std::vector<__int128>> m) {
    int k = static_cast<int>(m.size());
    __int128 prev = 1;
    int sign = 1;
    for (int i = 0; i < k; ++i) {
        if (m[i][i] == 0) {
            int r = i + 1;
            while (r < k && m[r][i] == 0) ++r;
            if (r == k) return 0;
            std::swap(m[i], m[r]);
            sign = -sign;
        }
        for (int r = i + 1; r < k; ++r)
            for (int c = i + 1; c < k; ++c) m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
        prev = m[i][i];
    }
    return sign * m[k - 1][k - 1];
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Cell reduce(int p, int q, int n, long long x, long long y) {
    long long k = fdiv(y, n);
    y -= k * n;
    x -= k * static_cast<long long>(n) * q;
    return {static_cast<int>(md(x, static_cast<long long>(n) * p)), static_cast<int>(y)};
}

std::vector<BruteRect> brute_parallelograms(const Diagram& d, const std::vector<Cell>& x, bool empty_only) {
    int n = d.n, N = d.n * d.p;
    auto red = [&](long long a, long long b) { return reduce(d.p, d.q, n, a, b); };
    std::set<Cell> xs;
    for (auto& c : x) xs.insert(red(c.c1, c.c2));
    std::vector<BruteRect> out;
    for (auto P : xs)
        for (int w = 1; w < N; ++w)
            for (int h = 1; h < N; ++h) {
                Cell ne = red(P.c1 + w, P.c2 + h);
                if (ne == P || !xs.count(ne)) continue;
                std::vector<int> mult(static_cast<std::size_t>(N) * n, 0);
                bool embedded = true;
                for (int i = 0; i < w && embedded; ++i)
                    for (int j = 0; j < h && embedded; ++j) {
                        Cell c = red(P.c1 + i, P.c2 + j);
                        if (++mult[static_cast<std::size_t>(c.c2) * N + c.c1] > 1) embedded = false;
                    }
                if (!embedded) continue;
                if (empty_only) {
                    bool empty = true;
                    for (int i = 1; i < w && empty; ++i)
                        for (int j = 1; j < h && empty; ++j)
                            if (xs.count(red(P.c1 + i, P.c2 + j))) empty = false;
                    if (!empty) continue;
                }
                BruteRect r;
                r.terminal = xs;
                r.terminal.erase(P);
                r.terminal.erase(ne);
                r.terminal.insert(red(P.c1 + w, P.c2));
                r.terminal.insert(red(P.c1, P.c2 + h));
                r.mult = mult;
                for (auto& m : d.X) r.nX.push_back(mult[static_cast<std::size_t>(m.c2) * N + m.c1]);
                for (auto& m : d.O) r.nO.push_back(mult[static_cast<std::size_t>(m.c2) * N + m.c1]);
                out.push_back(std::move(r));
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long long> snf_by_minors(const std::vector<std::vector<long long>>& A) {
    int rows = static_cast<int>(A.size());
    int cols = rows ? static_cast<int>(A[0].size()) : 0;
    std::vector<std::vector<unsigned>> rmasks(rows + 1), cmasks(cols + 1);
    for (unsigned m = 0; m < (1u << rows); ++m) rmasks[__builtin_popcount(m)].push_back(m);
    for (unsigned m = 0; m < (1u << cols); ++m) cmasks[__builtin_popcount(m)].push_back(m);
    std::vector<long long> out;
    __int128 prevD = 1;
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        __int128 D = 0;
        for (unsigned rm : rmasks[k]) {
            for (unsigned cm : cmasks[k]) {
                std::vector<std::vector<__int128>> sub;
                for (int r = 0; r < rows; ++r) {
                    if (!(rm >> r & 1)) continue;
                    std::vector<__int128> row;
                    for (int c = 0; c < cols; ++c)
                        if (cm >> c & 1) row.push_back(A[r][c]);
                    sub.push_back(std::move(row));
                }
                D = gcd128(D, det_bareiss(std::move(sub)));
                if (D == 1) break;
            }
            if (D == 1) break;
        }
        if (D == 0) break;
        out.push_back(static_cast<long long>(D / prevD));
        prevD = D;
    }
    return out;
}

std::pair<long long, long long> d_fraction(int p, int q, int i) {
    if (p == 1) return {0, 1};
    long long t = 2LL * i + 1 - p - q;
    long long num = static_cast<long long>(p) * q - t * t, den = 4LL * p * q;
    auto [rn, rd] = d_fraction(q, p % q, i % q);
    // num/den - rn/rd
    long long a = num * rd - rn * den, b = den * rd;
    long long g = std::gcd(a < 0 ? -a : a, b);
    if (g == 0) g = 1;
    return {a / g, b / g};
}

S3Grading s3_grading(const Diagram& d, const std::vector<Cell>& x) {
    int n = d.n;
    std::vector<std::pair<int, int>> P, O, X;
    for (auto& c : x) P.push_back({2 * c.c1, 2 * c.c2});
    for (auto& c : d.O) O.push_back({2 * c.c1 + 1, 2 * c.c2 + 1});
    for (auto& c : d.X) X.push_back({2 * c.c1 + 1, 2 * c.c2 + 1});
    auto I = [](const auto& a, const auto& b) {
        long long s = 0;
        for (auto& u : a)
            for (auto& v : b)
                if (u.first < v.first && u.second < v.second) ++s;
        return s;
    };
    // 2J(a,b) = I(a,b) + I(b,a)
    auto M2 = [&](const auto& marks) { return 2 * I(P, P) - 2 * (I(P, marks) + I(marks, P)) + 2 * I(marks, marks) + 2; };
    Rational MO(M2(O), 2), MX(M2(X), 2);
    // components: X_i -- O in its row -- X in that O's column ...
    std::vector<int> parent(2 * n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (d.X[i].c2 == d.O[j].c2) parent[find(i)] = find(n + j);
            if (d.X[i].c1 % n == d.O[j].c1 % n) parent[find(i)] = find(n + j);
        }
    int ell = 0;
    for (int i = 0; i < 2 * n; ++i)
        if (find(i) == i) ++ell;
    S3Grading g;
    g.M = MO;
    g.A = (MO - MX) / 2 - Rational(n - ell, 2);
    return g;
}

}  // namespace oracle
