#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lensgrid/grid.hpp"

namespace lensgrid {

// Row i sits at the lattice point (a[i]*n + sigma[i], i).
struct Generator {
    std::vector<int> sigma;
    std::vector<int> a;
    auto operator<=>(const Generator&) const = default;
};

std::vector<Cell> generator_points(const Diagram& d, const Generator& x);
// Inverse of generator_points; points may come in any order and any lift.
Generator generator_from_points(const Diagram& d, const std::vector<Cell>& pts);
bool is_generator(const Diagram& d, const Generator& x);
std::string to_string(const Generator& x);
Generator parse_generator(int n, const std::string& perm, const std::string& pcoords);

// n! p^n, saturating at UINT64_MAX.
std::uint64_t generator_count(const Diagram& d);
// Default 10^7; LENSGRID_CEILING overrides.
std::uint64_t generator_ceiling();

// Dense indexing, lexicographic by permutation and then by p-coordinates.
class GeneratorSpace {
public:
    explicit GeneratorSpace(const Diagram& d);
    std::size_t size() const { return size_; }
    Generator at(std::size_t idx) const;
    std::size_t index_of(const Generator& x) const;
    const Diagram& diagram() const { return d_; }

private:
    Diagram d_;
    std::vector<std::vector<int>> perms_;
    std::size_t pn_ = 1;
    std::size_t size_ = 0;
};

std::vector<Generator> enumerate_generators(const Diagram& d);
void for_each_generator(const Diagram& d, const std::function<void(const Generator&)>& f);

Generator special_generator_xO(const Diagram& d);

// Rectangle in the plane with lower-left (u, v), 0 <= u < np, 0 <= v < n.
struct Rect {
    int u = 0, v = 0, w = 0, h = 0;
    auto operator<=>(const Rect&) const = default;
};

struct Parallelogram {
    Generator initial, terminal;
    int row_sw = 0;  // row of the initial corner at SW
    int row_ne = 0;  // row of the initial corner at NE
    Rect rect;
    std::vector<int> nO, nX;
    bool empty = true;

    std::pair<int, int> tau() const { return {std::min(row_sw, row_ne), std::max(row_sw, row_ne)}; }
    int total_O() const;
    int total_X() const;
};

bool rect_embedded(int p, int q, int n, int w, int h);
// Number of lattice translates of the cell's center inside the open rectangle.
int marking_multiplicity(const Diagram& d, const Rect& r, Cell marking);
// Whether some lattice translate of the point lies in the open rectangle.
bool point_inside(const Diagram& d, const Rect& r, Cell pt);

// Embedded parallelograms with initial generator x, in a fixed order (row pair,
// then lift index). With empty_only, only those whose interior misses x.
std::vector<Parallelogram> parallelograms_from(const Diagram& d, const Generator& x, bool empty_only);
inline std::vector<Parallelogram> empty_parallelograms_from(const Diagram& d, const Generator& x) {
    return parallelograms_from(d, x, true);
}

// Cell multiplicities, indexed c2*np + c1.
struct Domain {
    Generator initial, terminal;
    std::vector<int> mult;
    bool operator==(const Domain&) const = default;
};

Domain domain_of(const Diagram& d, const Parallelogram& r);
Domain juxtapose(const Domain& a, const Domain& b);
// Multiplicity of each marking (X then O) counted from the cell map.
std::vector<int> domain_marking_counts(const Diagram& d, const Domain& D, bool X);
// Ordered factorizations into two empty parallelograms.
std::vector<std::pair<Parallelogram, Parallelogram>> decompositions(const Diagram& d, const Domain& D);

// Stable text key: "<sigma>/<a>|<row_sw>|u,v,w,h".
std::string parallelogram_key(const Parallelogram& r);

}  // namespace lensgrid
