#include "lensgrid/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace lensgrid {

namespace {

IntMatrix identity(std::size_t n) {
    IntMatrix I(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty()) return {};
    std::size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
    IntMatrix c(m, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

SmithForm smith_normal_form(const IntMatrix& A, bool transforms) {
    std::size_t m = A.size(), n = m ? A[0].size() : 0;
    IntMatrix D = A;
    SmithForm out;
    if (transforms) {
        out.U = identity(m);
        out.V = identity(n);
    }
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(D[i], D[j]);
        if (transforms) std::swap(out.U[i], out.U[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : D) std::swap(row[i], row[j]);
        if (transforms)
            for (auto& row : out.V) std::swap(row[i], row[j]);
    };
    // row_i += c * row_j
    auto add_row = [&](std::size_t i, std::size_t j, const BigInt& c) {
        for (std::size_t k = 0; k < n; ++k) D[i][k] += c * D[j][k];
        if (transforms)
            for (std::size_t k = 0; k < m; ++k) out.U[i][k] += c * out.U[j][k];
    };
    auto add_col = [&](std::size_t i, std::size_t j, const BigInt& c) {
        for (std::size_t k = 0; k < m; ++k) D[k][i] += c * D[k][j];
        if (transforms)
            for (std::size_t k = 0; k < n; ++k) out.V[k][i] += c * out.V[k][j];
    };

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the trailing block as pivot.
        bool found = false;
        std::size_t pi = 0, pj = 0;
        BigInt best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D[i][j] != 0 && (!found || abs(D[i][j]) < best)) {
                    found = true;
                    best = abs(D[i][j]);
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        for (;;) {
            bool again = false;
            for (std::size_t i = t + 1; i < m && !again; ++i) {
                if (D[i][t] == 0) continue;
                BigInt q = D[i][t] / D[t][t];
                add_row(i, t, -q);
                if (D[i][t] != 0) {
                    swap_rows(i, t);
                    again = true;
                }
            }
            if (again) continue;
            for (std::size_t j = t + 1; j < n && !again; ++j) {
                if (D[t][j] == 0) continue;
                BigInt q = D[t][j] / D[t][t];
                add_col(j, t, -q);
                if (D[t][j] != 0) {
                    swap_cols(j, t);
                    again = true;
                }
            }
            if (again) continue;
            for (std::size_t i = t + 1; i < m && !again; ++i)
                for (std::size_t j = t + 1; j < n && !again; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(t, i, 1);
                        again = true;
                    }
            if (!again) break;
        }
        if (D[t][t] < 0) {
            for (std::size_t k = 0; k < n; ++k) D[t][k] = -D[t][k];
            if (transforms)
                for (std::size_t k = 0; k < m; ++k) out.U[t][k] = -out.U[t][k];
        }
        out.factors.push_back(D[t][t]);
    }
    return out;
}

std::vector<BigInt> invariant_factors(SparseIntMatrix rows, std::size_t ncols) {
    std::vector<std::set<std::size_t>> cols(ncols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (auto it = rows[r].begin(); it != rows[r].end();) {
            if (it->second == 0) it = rows[r].erase(it);
            else {
                cols[it->first].insert(r);
                ++it;
            }
        }
    }
    std::vector<bool> alive(rows.size(), true);
    std::size_t units = 0;
    for (;;) {
        // Unit pivot with the smallest fill estimate.
        bool found = false;
        std::size_t br = 0, bc = 0, bcost = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!alive[r]) continue;
            for (auto& [c, v] : rows[r]) {
                if (v != 1 && v != -1) continue;
                std::size_t cost = (rows[r].size() - 1) * (cols[c].size() - 1);
                if (!found || cost < bcost) {
                    found = true;
                    br = r;
                    bc = c;
                    bcost = cost;
                }
            }
        }
        if (!found) break;
        BigInt u = rows[br].at(bc);
        std::vector<std::size_t> others(cols[bc].begin(), cols[bc].end());
        for (auto r2 : others) {
            if (r2 == br) continue;
            BigInt f = rows[r2].at(bc) * u;
            for (auto& [c, v] : rows[br]) {
                auto& slot = rows[r2][c];
                bool was = slot != 0;
                slot -= f * v;
                if (slot == 0) {
                    rows[r2].erase(c);
                    if (was) cols[c].erase(r2);
                } else if (!was) {
                    cols[c].insert(r2);
                }
            }
        }
        for (auto& [c, v] : rows[br]) cols[c].erase(br);
        rows[br].clear();
        alive[br] = false;
        ++units;
    }
    std::vector<std::size_t> rr, cc;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (alive[r] && !rows[r].empty()) rr.push_back(r);
    for (std::size_t c = 0; c < ncols; ++c)
        if (!cols[c].empty()) cc.push_back(c);
    std::vector<BigInt> out(units, BigInt(1));
    if (!rr.empty()) {
        IntMatrix D(rr.size(), std::vector<BigInt>(cc.size(), 0));
        for (std::size_t i = 0; i < rr.size(); ++i)
            for (std::size_t j = 0; j < cc.size(); ++j) {
                auto it = rows[rr[i]].find(cc[j]);
                if (it != rows[rr[i]].end()) D[i][j] = it->second;
            }
        auto s = smith_normal_form(D);
        out.insert(out.end(), s.factors.begin(), s.factors.end());
    }
    return out;
}

std::size_t rank_f2(const SparseIntMatrix& rows, std::size_t ncols) {
    std::size_t words = (ncols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> M;
    M.reserve(rows.size());
    for (auto& r : rows) {
        std::vector<std::uint64_t> b(words, 0);
        bool any = false;
        for (auto& [c, v] : r)
            if (v % 2 != 0) {
                b[c / 64] |= (1ull << (c % 64));
                any = true;
            }
        if (any) M.push_back(std::move(b));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < M.size(); ++c) {
        std::size_t w = c / 64;
        std::uint64_t bit = 1ull << (c % 64);
        std::size_t piv = rank;
        while (piv < M.size() && !(M[piv][w] & bit)) ++piv;
        if (piv == M.size()) continue;
        std::swap(M[piv], M[rank]);
        for (std::size_t i = rank + 1; i < M.size(); ++i)
            if (M[i][w] & bit)
                for (std::size_t k = w; k < words; ++k) M[i][k] ^= M[rank][k];
        ++rank;
    }
    return rank;
}

}  // namespace lensgrid
