#include "lensgrid/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "lensgrid/homology.hpp"

namespace lensgrid {

namespace {

std::vector<int> coprime_qs(int p) {
    std::vector<int> out;
    for (int q = 0; q < p; ++q)
        if (std::gcd(p, q) == 1) out.push_back(q);
    return out;
}

std::pair<std::vector<Cell>, std::vector<Cell>> sorted_markings(const Diagram& d) {
    auto c = canonical(d);
    return {c.X, c.O};
}

}  // namespace

Diagram translation_representative(const Diagram& d) {
    Diagram best = canonical(d);
    auto key = sorted_markings(best);
    for (long long dx = 0; dx < d.N(); ++dx)
        for (long long dy = 0; dy < d.n; ++dy) {
            auto s = canonical(shift_fundamental_domain(d, dx, dy));
            auto k = sorted_markings(s);
            if (k < key) {
                key = k;
                best = s;
            }
        }
    return best;
}

std::vector<Diagram> n2_exhaustive(int max_p) {
    std::vector<Diagram> out;
    for (int p = 1; p <= max_p; ++p) {
        int N = 2 * p;
        // Row 0 and row 1 each hold one marking of a kind, in opposite column parities.
        std::vector<std::pair<int, int>> rows;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                if ((a - b) % 2 != 0) rows.emplace_back(a, b);
        for (int q : coprime_qs(p)) {
            std::set<std::pair<std::vector<Cell>, std::vector<Cell>>> seen;
            for (auto& x : rows)
                for (auto& o : rows) {
                    Diagram d;
                    d.p = p;
                    d.q = q;
                    d.n = 2;
                    d.X = {{x.first, 0}, {x.second, 1}};
                    d.O = {{o.first, 0}, {o.second, 1}};
                    auto r = translation_representative(d);
                    if (seen.insert(sorted_markings(r)).second) out.push_back(r);
                }
        }
    }
    return out;
}

Diagram random_diagram(int p, int q, int n, std::mt19937_64& rng) {
    Diagram d;
    d.p = p;
    d.q = q;
    d.n = n;
    auto place = [&](std::vector<Cell>& v) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::uniform_int_distribution<int> sheet(0, p - 1);
        for (int r = 0; r < n; ++r) v.push_back({sheet(rng) * n + perm[r], r});
    };
    place(d.X);
    place(d.O);
    return d;
}

std::vector<Diagram> random_diagrams(int n, int max_p, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Diagram> out;
    std::uniform_int_distribution<int> pd(1, max_p);
    while (static_cast<int>(out.size()) < count) {
        int p = pd(rng);
        auto qs = coprime_qs(p);
        std::uniform_int_distribution<std::size_t> qd(0, qs.size() - 1);
        int q = qs[qd(rng)];
        out.push_back(random_diagram(p, q, n, rng));
    }
    return out;
}

std::vector<Diagram> scan_corpus(const TorsionScanOptions& opt) {
    std::vector<Diagram> out;
    for (int n = opt.min_n; n <= opt.max_n; ++n) {
        if (opt.samples > 0) {
            std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(n));
            std::uniform_int_distribution<int> pd(opt.min_p, opt.max_p);
            for (int s = 0; s < opt.samples; ++s) {
                int p = pd(rng);
                auto qs = coprime_qs(p);
                std::uniform_int_distribution<std::size_t> qd(0, qs.size() - 1);
                out.push_back(random_diagram(p, qs[qd(rng)], n, rng));
            }
            continue;
        }
        if (n == 1) {
            for (int p = opt.min_p; p <= opt.max_p; ++p)
                for (int q : coprime_qs(p))
                    for (int a = 0; a < p; ++a)
                        for (int b = 0; b < p; ++b) {
                            Diagram d{p, q, 1, {{a, 0}}, {{b, 0}}};
                            auto r = translation_representative(d);
                            if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
                        }
        } else if (n == 2) {
            for (auto& d : n2_exhaustive(opt.max_p))
                if (d.p >= opt.min_p) out.push_back(d);
        } else {
            throw Error("exhaustive scans stop at n = 2; pass a sample count for larger grids");
        }
    }
    return out;
}

TorsionScanResult scan_torsion(const std::vector<Diagram>& corpus, std::uint64_t seed) {
    TorsionScanResult res;
    std::ostringstream log;
    log << "# torsion scan, " << corpus.size() << " diagrams, seed " << seed << "\n";
    for (auto& d : corpus) {
        auto S = solved_signs(GridShape::of(d));
        auto G = build_complex(d, Ring::Z, S.get());
        auto H = homology(tilde(G.C));
        TorsionFinding f{d, table_text(H), has_torsion(H)};
        ++res.scanned;
        log << digest(d) << " p=" << d.p << " q=" << d.q << " n=" << d.n << " rank=" << total_rank(H)
            << " torsion=" << (f.torsion ? "yes" : "no") << "\n";
        if (f.torsion) {
            ++res.with_torsion;
            log << serialize(d) << f.table;
        }
        res.findings.push_back(std::move(f));
    }
    log << "# scanned " << res.scanned << ", with torsion " << res.with_torsion << "\n";
    res.log = log.str();
    return res;
}

}  // namespace lensgrid
