#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lensgrid {

// Nonnegative residue.
inline long long pmod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline long long floordiv(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// A cell (for markings) or a lattice point (for generator components), stored
// by its lower-left corner in sheared coordinates.
struct Cell {
    int c1 = 0;
    int c2 = 0;
    auto operator<=>(const Cell&) const = default;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& msg);
    int line, col;
};

struct Diagram {
    int p = 1;
    int q = 0;
    int n = 1;
    std::vector<Cell> X;
    std::vector<Cell> O;

    int N() const { return n * p; }
    bool operator==(const Diagram&) const = default;
};

struct Violation {
    std::string what;
    std::vector<int> indices;
};

std::vector<Violation> validate(const Diagram& d);
// Throws Error listing every violation.
void require_valid(const Diagram& d);

// Reduce a plane point to the fundamental domain [0,np) x [0,n).
Cell reduce_point(int p, int q, int n, long long x, long long y);
inline Cell reduce_point(const Diagram& d, long long x, long long y) {
    return reduce_point(d.p, d.q, d.n, x, y);
}

// Component label per marking: entries 0..n-1 are X_i, n..2n-1 are O_i.
std::vector<int> link_components(const Diagram& d);
int component_count(const Diagram& d);

// Re-coordinatize after moving the fundamental domain by (dx, dy) units.
Cell shift_point(const Diagram& d, Cell c, long long dx, long long dy);
Diagram shift_fundamental_domain(const Diagram& d, long long dx, long long dy);

struct CoverDiagram {
    int N = 0;
    std::vector<Cell> X, O;
    int deck_dx = 0, deck_dy = 0;
};

// The p-strip lift ((a + nqk) mod np, b + nk).
std::vector<Cell> lift_points(int p, int q, int n, const std::vector<Cell>& pts);
CoverDiagram lift_to_cover(const Diagram& d);

Diagram canonical(const Diagram& d);
Diagram parse(std::string_view text);
std::string serialize(const Diagram& d);
Diagram read_diagram_file(const std::string& path);
// Hex digest of the canonical serialization.
std::string digest(const Diagram& d);

// Index of the X (or O) marking in row r.
int x_in_row(const Diagram& d, int r);
int o_in_row(const Diagram& d, int r);

}  // namespace lensgrid
