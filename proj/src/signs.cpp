#include "lensgrid/signs.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>

namespace lensgrid {

Diagram GridShape::bare() const {
    Diagram d;
    d.p = p;
    d.q = q;
    d.n = n;
    for (int i = 0; i < n; ++i) {
        d.X.push_back({i, i});
        d.O.push_back({i, i});
    }
    return d;
}

std::uint64_t pack_key(const GridShape& g, std::size_t gen_index, int row_sw, int w, int h) {
    std::uint64_t N = static_cast<std::uint64_t>(g.n) * g.p;
    return ((static_cast<std::uint64_t>(gen_index) * g.n + row_sw) * N + w) * N + h;
}

namespace {

struct Unpacked {
    std::size_t gen;
    int row, w, h;
};

Unpacked unpack(const GridShape& g, std::uint64_t k) {
    std::uint64_t N = static_cast<std::uint64_t>(g.n) * g.p;
    Unpacked u;
    u.h = static_cast<int>(k % N);
    k /= N;
    u.w = static_cast<int>(k % N);
    k /= N;
    u.row = static_cast<int>(k % g.n);
    u.gen = static_cast<std::size_t>(k / g.n);
    return u;
}

}  // namespace

SignAssignment::SignAssignment(GridShape g)
    : shape_(g), space_(std::make_shared<GeneratorSpace>(g.bare())) {}

std::uint64_t SignAssignment::key_of(const Parallelogram& r) const {
    return pack_key(shape_, space_->index_of(r.initial), r.row_sw, r.rect.w, r.rect.h);
}

int SignAssignment::sign(std::uint64_t key) const {
    auto it = eps_.find(key);
    if (it == eps_.end()) throw Error("sign assignment: unknown parallelogram " + key_text(shape_, key));
    return it->second ? -1 : 1;
}

int SignAssignment::sign(const Parallelogram& r) const { return sign(key_of(r)); }

std::string key_text(const GridShape& g, std::uint64_t key) {
    auto u = unpack(g, key);
    GeneratorSpace sp(g.bare());
    auto x = sp.at(u.gen);
    std::ostringstream os;
    os << to_string(x) << "|" << u.row << "|" << x.a[u.row] * g.n + x.sigma[u.row] << "," << u.row << "," << u.w
       << "," << u.h;
    return os.str();
}

std::string SignAssignment::export_text() const {
    std::vector<std::pair<std::uint64_t, std::uint8_t>> items(eps_.begin(), eps_.end());
    std::sort(items.begin(), items.end());
    std::ostringstream os;
    os << "# lensgrid signs p=" << shape_.p << " q=" << shape_.q << " n=" << shape_.n << "\n";
    for (auto& [k, e] : items) os << key_text(shape_, k) << " -> " << (e ? "-1" : "+1") << "\n";
    return os.str();
}

SignAssignment SignAssignment::import_text(const GridShape& g, const std::string& text) {
    SignAssignment S(g);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw ParseError(lineno, 1, "expected 'key -> +1|-1'");
        std::string key = line.substr(0, arrow), val = line.substr(arrow + 2);
        key.erase(key.find_last_not_of(" \t") + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        val.erase(0, val.find_first_not_of(" \t"));
        val.erase(val.find_last_not_of(" \t\r") + 1);
        if (val != "+1" && val != "-1") throw ParseError(lineno, static_cast<int>(arrow) + 3, "sign must be +1 or -1");
        // sigma/a|row|u,v,w,h
        std::vector<std::string> parts;
        std::stringstream ks(key);
        std::string part;
        while (std::getline(ks, part, '|')) parts.push_back(part);
        if (parts.size() != 3) throw ParseError(lineno, 1, "malformed key");
        auto slash = parts[0].find('/');
        if (slash == std::string::npos) throw ParseError(lineno, 1, "malformed generator in key");
        Generator x = parse_generator(g.n, parts[0].substr(0, slash), parts[0].substr(slash + 1));
        int row = std::stoi(parts[1]);
        std::vector<int> r;
        std::stringstream rs(parts[2]);
        while (std::getline(rs, part, ',')) r.push_back(std::stoi(part));
        if (r.size() != 4) throw ParseError(lineno, 1, "malformed rectangle in key");
        S.set(pack_key(g, S.space_->index_of(x), row, r[2], r[3]), val == "-1" ? 1 : 0);
    }
    return S;
}

std::vector<Parallelogram> enumerate_all_parallelograms(const Diagram& d) {
    std::vector<Parallelogram> out;
    for_each_generator(d, [&](const Generator& x) {
        auto ps = parallelograms_from(d, x, false);
        out.insert(out.end(), ps.begin(), ps.end());
    });
    return out;
}

namespace {

struct Piece {
    std::uint64_t key;
    std::size_t terminal;
    std::string mult;  // one byte per cell
};

enum class LoopKind { Row, Column, Other };

LoopKind classify_loop(const GridShape& g, const std::string& m) {
    int N = g.n * g.p;
    // A band of whole rows (or whole columns) of any thickness below n. The
    // full set is taken as a cyclic interval of row (column) indices.
    auto band = [&](auto index_of) {
        std::vector<int> full(g.n, -1);
        for (int c2 = 0; c2 < g.n; ++c2)
            for (int c1 = 0; c1 < N; ++c1) {
                int v = m[c2 * N + c1], k = index_of(c1, c2);
                if (v > 1 || (full[k] >= 0 && full[k] != v)) return false;
                full[k] = v;
            }
        int ones = 0, starts = 0;
        for (int k = 0; k < g.n; ++k) {
            ones += full[k];
            if (full[k] == 1 && full[(k + g.n - 1) % g.n] == 0) ++starts;
        }
        return ones > 0 && ones < g.n && starts == 1;
    };
    if (band([](int, int c2) { return c2; })) return LoopKind::Row;
    if (band([&](int c1, int) { return c1 % g.n; })) return LoopKind::Column;
    return LoopKind::Other;
}

}  // namespace

ConstraintSystem build_constraints(const GridShape& g) {
    ConstraintSystem sys;
    sys.shape = g;
    Diagram d = g.bare();
    GeneratorSpace sp(d);
    std::vector<std::vector<Piece>> from(sp.size());
    for (std::size_t i = 0; i < sp.size(); ++i) {
        for (auto& r : parallelograms_from(d, sp.at(i), false)) {
            auto D = domain_of(d, r);
            std::string m(D.mult.begin(), D.mult.end());
            Piece pc{pack_key(g, i, r.row_sw, r.rect.w, r.rect.h), sp.index_of(r.terminal), std::move(m)};
            sys.variables.push_back(pc.key);
            from[i].push_back(std::move(pc));
        }
    }
    for (std::size_t x = 0; x < sp.size(); ++x) {
        // (terminal, domain) -> list of (r1, r2, intermediate)
        std::map<std::pair<std::size_t, std::string>, std::vector<std::array<std::uint64_t, 3>>> groups;
        for (auto& r1 : from[x])
            for (auto& r2 : from[r1.terminal]) {
                std::string m = r1.mult;
                for (size_t c = 0; c < m.size(); ++c) m[c] = static_cast<char>(m[c] + r2.mult[c]);
                groups[{r2.terminal, std::move(m)}].push_back({r1.key, r2.key, r1.terminal});
            }
        for (auto& [k, decs] : groups) {
            if (k.first == x) {
                auto kind = classify_loop(g, k.second);
                if (kind != LoopKind::Other) {
                    for (auto& dd : decs)
                        sys.equations.push_back({kind == LoopKind::Row ? Axiom::S2 : Axiom::S3, {dd[0], dd[1]},
                                                 kind == LoopKind::Row ? 0 : 1});
                    continue;
                }
                ++sys.unclassified_loops;
            }
            for (size_t a = 0; a < decs.size(); ++a)
                for (size_t b = a + 1; b < decs.size(); ++b)
                    if (decs[a][2] != decs[b][2])
                        sys.equations.push_back({Axiom::S1, {decs[a][0], decs[a][1], decs[b][0], decs[b][1]}, 1});
        }
    }
    return sys;
}

namespace {

using Row = std::vector<std::uint32_t>;

void xor_into(Row& a, const Row& b) {
    Row out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    a.swap(out);
}

Row normalize(Row r) {
    std::sort(r.begin(), r.end());
    Row out;
    for (size_t i = 0; i < r.size();) {
        size_t j = i;
        while (j < r.size() && r[j] == r[i]) ++j;
        if ((j - i) % 2) out.push_back(r[i]);
        i = j;
    }
    return out;
}

}  // namespace

SignAssignment solve_sign_assignment(const ConstraintSystem& sys, const std::function<int(std::uint64_t)>& free_value,
                                     SolveStats* stats) {
    auto t0 = std::chrono::steady_clock::now();
    std::unordered_map<std::uint64_t, std::uint32_t> var;
    var.reserve(sys.variables.size() * 2);
    for (auto k : sys.variables) var.emplace(k, static_cast<std::uint32_t>(var.size()));
    std::vector<std::uint64_t> keys(var.size());
    for (auto& [k, v] : var) keys[v] = k;

    auto eliminate = [&](bool track) {
        std::vector<Row> rows;
        std::vector<std::uint8_t> rhs;
        std::vector<Row> origin;
        std::vector<std::int64_t> pivot(var.size(), -1);
        for (std::size_t e = 0; e < sys.equations.size(); ++e) {
            Row r;
            for (auto k : sys.equations[e].vars) {
                auto it = var.find(k);
                if (it == var.end()) throw Error("constraint references unknown parallelogram");
                r.push_back(it->second);
            }
            r = normalize(std::move(r));
            std::uint8_t b = static_cast<std::uint8_t>(sys.equations[e].parity & 1);
            Row org;
            if (track) org.push_back(static_cast<std::uint32_t>(e));
            while (!r.empty()) {
                auto v = r.back();
                if (pivot[v] < 0) break;
                xor_into(r, rows[pivot[v]]);
                b ^= rhs[pivot[v]];
                if (track) xor_into(org, origin[pivot[v]]);
            }
            if (r.empty()) {
                if (b) {
                    if (!track) return std::make_tuple(false, rows, rhs, pivot, Row{});
                    return std::make_tuple(false, rows, rhs, pivot, org);
                }
                continue;
            }
            pivot[r.back()] = static_cast<std::int64_t>(rows.size());
            rows.push_back(std::move(r));
            rhs.push_back(b);
            if (track) origin.push_back(std::move(org));
        }
        return std::make_tuple(true, rows, rhs, pivot, Row{});
    };

    auto [ok, rows, rhs, pivot, wit] = eliminate(false);
    if (!ok) {
        auto res = eliminate(true);
        auto w = std::get<4>(res);
        throw Unsolvable("sign constraints are inconsistent", std::vector<std::size_t>(w.begin(), w.end()));
    }
    std::vector<std::uint8_t> val(var.size(), 0);
    for (std::size_t v = 0; v < var.size(); ++v) {
        if (pivot[v] < 0) {
            val[v] = free_value ? static_cast<std::uint8_t>(free_value(keys[v]) & 1) : 0;
            continue;
        }
        const Row& r = rows[pivot[v]];
        std::uint8_t b = rhs[pivot[v]];
        for (auto u : r)
            if (u != v) b ^= val[u];
        val[v] = b;
    }
    SignAssignment S(sys.shape);
    for (std::size_t v = 0; v < var.size(); ++v) S.set(keys[v], val[v]);
    if (stats) {
        stats->variables = var.size();
        stats->equations = sys.equations.size();
        stats->rank = rows.size();
        stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return S;
}

std::shared_ptr<const SignAssignment> solved_signs(const GridShape& g) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const SignAssignment>> cache;
    auto key = std::make_tuple(g.p, g.q, g.n);
    {
        std::lock_guard lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto S = std::make_shared<const SignAssignment>(solve_sign_assignment(build_constraints(g)));
    std::lock_guard lk(mu);
    return cache.emplace(key, S).first->second;
}

AxiomReport verify_axioms(const ConstraintSystem& sys, const SignAssignment& S) {
    AxiomReport rep;
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        int b = 0;
        for (auto k : sys.equations[e].vars) {
            if (!S.has(k)) {
                b = -1;
                break;
            }
            b ^= S.sign(k) < 0 ? 1 : 0;
        }
        ++rep.checked;
        if (b != (sys.equations[e].parity & 1)) rep.violations.push_back(e);
    }
    return rep;
}

SignAssignment gauge_transform(const SignAssignment& S, const std::function<int(std::size_t)>& g) {
    const auto& sh = S.shape();
    Diagram d = sh.bare();
    GeneratorSpace sp(d);
    SignAssignment out(sh);
    for (auto& [k, e] : S.raw()) {
        auto u = unpack(sh, k);
        auto x = sp.at(u.gen);
        auto pts = generator_points(d, x);
        int s = (u.row + u.h) % sh.n;
        pts[u.row] = reduce_point(d, static_cast<long long>(pts[u.row].c1) + u.w, u.row);
        pts[s] = reduce_point(d, generator_points(d, x)[u.row].c1, static_cast<long long>(u.row) + u.h);
        auto y = generator_from_points(d, pts);
        int flip = (g(u.gen) + g(sp.index_of(y))) & 1;
        out.set(k, e ^ flip);
    }
    return out;
}

}  // namespace lensgrid
