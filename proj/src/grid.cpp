#include "lensgrid/grid.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace lensgrid {

ParseError::ParseError(int line_, int col_, const std::string& msg)
    : Error("line " + std::to_string(line_) + ", column " + std::to_string(col_) + ": " + msg),
      line(line_), col(col_) {}

std::vector<Violation> validate(const Diagram& d) {
    std::vector<Violation> out;
    if (d.p <= 0) out.push_back({"p must be positive", {}});
    if (d.p > 0 && !(-d.p < d.q && d.q < d.p)) out.push_back({"q must satisfy -p < q < p", {}});
    if (d.p > 0 && std::gcd(d.p, std::abs(d.q)) != 1) out.push_back({"gcd(p,q) != 1", {}});
    if (d.n <= 0) {
        out.push_back({"n must be positive", {}});
        return out;
    }
    if (static_cast<int>(d.X.size()) != d.n) out.push_back({"expected n X markings", {static_cast<int>(d.X.size())}});
    if (static_cast<int>(d.O.size()) != d.n) out.push_back({"expected n O markings", {static_cast<int>(d.O.size())}});
    if (d.p <= 0) return out;
    long long N = static_cast<long long>(d.n) * d.p;
    auto check = [&](const std::vector<Cell>& ms, const char* tag) {
        for (size_t i = 0; i < ms.size(); ++i) {
            if (ms[i].c1 < 0 || ms[i].c1 >= N || ms[i].c2 < 0 || ms[i].c2 >= d.n)
                out.push_back({std::string(tag) + " marking out of range", {static_cast<int>(i)}});
        }
        for (size_t i = 0; i < ms.size(); ++i)
            for (size_t j = i + 1; j < ms.size(); ++j) {
                if (ms[i].c2 == ms[j].c2)
                    out.push_back({std::string("duplicate ") + tag + " row", {int(i), int(j)}});
                if (pmod(ms[i].c1, d.n) == pmod(ms[j].c1, d.n))
                    out.push_back({std::string("duplicate ") + tag + " column", {int(i), int(j)}});
            }
    };
    check(d.X, "X");
    check(d.O, "O");
    return out;
}

void require_valid(const Diagram& d) {
    auto v = validate(d);
    if (v.empty()) return;
    std::string msg = "invalid diagram:";
    for (auto& e : v) {
        msg += " " + e.what;
        for (int i : e.indices) msg += " #" + std::to_string(i);
        msg += ";";
    }
    throw Error(msg);
}

Cell reduce_point(int p, int q, int n, long long x, long long y) {
    long long N = static_cast<long long>(n) * p;
    long long t = floordiv(y, n);
    long long yy = y - n * t;
    long long xx = pmod(x - static_cast<long long>(n) * q * t, N);
    return {static_cast<int>(xx), static_cast<int>(yy)};
}

int x_in_row(const Diagram& d, int r) {
    for (int i = 0; i < d.n; ++i)
        if (d.X[i].c2 == r) return i;
    throw Error("no X in row " + std::to_string(r));
}

int o_in_row(const Diagram& d, int r) {
    for (int i = 0; i < d.n; ++i)
        if (d.O[i].c2 == r) return i;
    throw Error("no O in row " + std::to_string(r));
}

std::vector<int> link_components(const Diagram& d) {
    int n = d.n;
    std::vector<int> parent(2 * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (d.X[i].c2 == d.O[j].c2) unite(i, n + j);
            if (pmod(d.X[i].c1, n) == pmod(d.O[j].c1, n)) unite(i, n + j);
        }
    std::vector<int> label(2 * n, -1), out(2 * n);
    int next = 0;
    for (int i = 0; i < 2 * n; ++i) {
        int r = find(i);
        if (label[r] < 0) label[r] = next++;
        out[i] = label[r];
    }
    return out;
}

int component_count(const Diagram& d) {
    auto c = link_components(d);
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

Cell shift_point(const Diagram& d, Cell c, long long dx, long long dy) {
    return reduce_point(d, c.c1 - dx, c.c2 - dy);
}

Diagram shift_fundamental_domain(const Diagram& d, long long dx, long long dy) {
    Diagram r = d;
    for (auto& c : r.X) c = shift_point(d, c, dx, dy);
    for (auto& c : r.O) c = shift_point(d, c, dx, dy);
    return r;
}

std::vector<Cell> lift_points(int p, int q, int n, const std::vector<Cell>& pts) {
    std::vector<Cell> out;
    out.reserve(pts.size() * p);
    long long N = static_cast<long long>(n) * p;
    for (int k = 0; k < p; ++k)
        for (const auto& c : pts)
            out.push_back({static_cast<int>(pmod(c.c1 + static_cast<long long>(n) * q * k, N)), c.c2 + n * k});
    return out;
}

CoverDiagram lift_to_cover(const Diagram& d) {
    CoverDiagram c;
    c.N = d.N();
    c.X = lift_points(d.p, d.q, d.n, d.X);
    c.O = lift_points(d.p, d.q, d.n, d.O);
    c.deck_dx = static_cast<int>(pmod(static_cast<long long>(d.n) * d.q, d.N()));
    c.deck_dy = d.n;
    return c;
}

Diagram canonical(const Diagram& d) {
    Diagram r = d;
    auto by_row = [](const Cell& a, const Cell& b) { return a.c2 != b.c2 ? a.c2 < b.c2 : a.c1 < b.c1; };
    std::sort(r.X.begin(), r.X.end(), by_row);
    std::sort(r.O.begin(), r.O.end(), by_row);
    return r;
}

namespace {

struct Tok {
    std::string text;
    int col;
};

std::vector<Tok> tokenize(const std::string& line) {
    std::vector<Tok> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

int to_int(const Tok& t, int line) {
    try {
        size_t pos = 0;
        long v = std::stol(t.text, &pos);
        if (pos != t.text.size()) throw std::invalid_argument("x");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ParseError(line, t.col, "expected integer, got '" + t.text + "'");
    }
}

}  // namespace

Diagram parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    bool header = false;
    bool hp = false, hq = false, hn = false;
    Diagram d;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        auto toks = tokenize(raw);
        if (toks.empty()) continue;
        if (!header) {
            if (toks.size() != 2 || toks[0].text != "lensgrid" || toks[1].text != "1")
                throw ParseError(lineno, toks[0].col, "expected header 'lensgrid 1'");
            header = true;
            continue;
        }
        const auto& key = toks[0].text;
        if (key == "p" || key == "q" || key == "n") {
            if (toks.size() != 2) throw ParseError(lineno, toks[0].col, "expected '" + key + " <int>'");
            int v = to_int(toks[1], lineno);
            if (key == "p") {
                if (v <= 0) throw ParseError(lineno, toks[1].col, "p must be positive");
                d.p = v;
                hp = true;
            } else if (key == "q") {
                d.q = v;
                hq = true;
            } else {
                if (v <= 0) throw ParseError(lineno, toks[1].col, "n must be positive");
                d.n = v;
                hn = true;
            }
        } else if (key == "X" || key == "O") {
            if (toks.size() != 3) throw ParseError(lineno, toks[0].col, "expected '" + key + " <c1> <c2>'");
            Cell c{to_int(toks[1], lineno), to_int(toks[2], lineno)};
            (key == "X" ? d.X : d.O).push_back(c);
        } else {
            throw ParseError(lineno, toks[0].col, "unknown keyword '" + key + "'");
        }
    }
    if (!header) throw ParseError(lineno, 1, "missing header 'lensgrid 1'");
    if (!hp || !hq || !hn) throw ParseError(lineno, 1, "missing p, q or n");
    require_valid(d);
    return d;
}

std::string serialize(const Diagram& d0) {
    Diagram d = canonical(d0);
    std::ostringstream os;
    os << "lensgrid 1\n";
    os << "p " << d.p << "\nq " << d.q << "\nn " << d.n << "\n";
    for (auto& c : d.X) os << "X " << c.c1 << " " << c.c2 << "\n";
    for (auto& c : d.O) os << "O " << c.c1 << " " << c.c2 << "\n";
    return os.str();
}

Diagram read_diagram_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string digest(const Diagram& d) {
    // FNV-1a, 64 bit.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : serialize(d)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace lensgrid
