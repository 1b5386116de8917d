#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lensgrid/complex.hpp"

namespace lensgrid {

// Transposition swaps the roles of rows and columns. The result lives on the
// lattice with q replaced by its inverse mod p; transposing back restores the
// original lattice.
Diagram transpose(const Diagram& d);

// Exchange the markings of columns j and j+1 (mod n). Throws if the markings
// interleave along the shared beta circle or if the pair is special.
Diagram commute_columns(const Diagram& d, int j);
Diagram commute_rows(const Diagram& d, int i);
// Same exchange for a special pair: an X of one column and the O of the other
// occupy adjacent cells of one row.
Diagram switch_columns(const Diagram& d, int j);
Diagram switch_rows(const Diagram& d, int i);

bool columns_special(const Diagram& d, int j);

// Both sides of a column commutation (or switch) drawn on one torus.
// Positions along the shared beta circle are measured in eighths of a cell:
// the circle has np unit segments and a marking adjacent to segment H sits
// at 8H+4 (8H+3 or 8H+5 when two markings of one row share the segment).
struct CombinedDiagram {
    Diagram before, after;
    int column = 0;  // columns `column` and `column`+1 exchange
    bool is_switch = false;
    int circle = 0;  // residue mod n of the shared beta line
    int length = 0;  // 8np
    // gamma crosses beta going west to east at cross_a and back at cross_b
    // (both read going up); gamma runs west of beta on (cross_b, cross_a).
    int cross_a = 0, cross_b = 0;
    // Per marking: position on the circle, -1 if not adjacent to it.
    std::vector<int> pos_X, pos_O;
    std::vector<bool> left_X, left_O;  // marking sits in the left column
    // Height of each lattice point on the shared line, indexed c2*np + c1.
    std::vector<int> height;

    int height_of(Cell pt) const;
};

CombinedDiagram build_combined(const Diagram& d, int j);

enum class PolygonKind { PentagonBG, PentagonGB, Hexagon };

struct Polygon {
    PolygonKind kind = PolygonKind::PentagonBG;
    Generator initial, terminal;
    Parallelogram R;      // straightening, a parallelogram of `before`
    bool left = false;    // lies to the left of the shared circle
    std::vector<int> nO, nX;
};

// Empty polygons out of x: pentagons from before to after (BG), after to
// before (GB), or hexagons from before to before.
std::vector<Polygon> enumerate_polygons(const CombinedDiagram& cd, const Generator& x, PolygonKind kind);

// Maps between complexes of `before` and `after`; the complexes supply the
// generator lists and, over Z, the Maslov parities. S is shared by both sides.
LinearMap phi_beta_gamma(const CombinedDiagram& cd, const GridComplex& before, const SignAssignment* S);
LinearMap phi_gamma_beta(const CombinedDiagram& cd, const GridComplex& after, const SignAssignment* S);
LinearMap h_beta_gamma_beta(const CombinedDiagram& cd, const GridComplex& before, const SignAssignment* S);

struct CommutationReport {
    CheckResult chain_map, grading, homotopy;
    bool tilde_equal = false;
    bool ok() const { return chain_map.ok && grading.ok && homotopy.ok && tilde_equal; }
};

// Phi d = d' Phi, Phi preserves (S, M, A), and over F2
// Phi_gb Phi_bg + dH + Hd = Id, over Z Id + Phi_gb Phi_bg + dH + Hd = 0.
CommutationReport verify_commutation(const CombinedDiagram& cd, Ring ring, const SignAssignment* S);

enum class StabKind { X_NW, X_NE, X_SW, X_SE, O_NW, O_NE, O_SW, O_SE };

std::string to_string(StabKind k);
StabKind parse_stab_kind(const std::string& s);
inline bool is_x_type(StabKind k) { return k <= StabKind::X_SE; }

struct Stabilization {
    Diagram before, after;
    StabKind kind = StabKind::X_SW;
    int marking = 0;  // index of the split marking (X index for X types)
    int sheet = 0, col = 0, row = 0;
    Cell c;  // centre of the new 2x2 block, a lattice point of `after`

    // Plane coordinates of `before` mapped into `after`.
    long long insert_x(long long x) const;
    long long insert_y(long long y) const;
    Generator insert(const Generator& x) const;   // x u c
    Generator remove(const Generator& x) const;   // x \ c, requires c in x
    bool contains_c(const Generator& x) const;
};

// New markings take index n. The split marking keeps its index; its new twin
// shares a column with the new marking of the other type.
Stabilization stabilize(const Diagram& d, int marking, StabKind kind);
// Removes row `row`+1 and one column of a 2x2 stabilization block whose lower
// row is `row`. Throws if no block matches.
Diagram destabilize(const Diagram& d, int row);

// Sign assignment of `before` induced from one of `after` through r -> r'.
SignAssignment restrict_signs(const Stabilization& st, const SignAssignment& S_after);

struct StabilizationSplit {
    Stabilization st;
    std::vector<Generator> gens;          // generators of `after`
    std::vector<std::size_t> I, N;        // indices into gens
    std::vector<std::size_t> e_index;     // for each I position, index of x \ c among before's generators
};

StabilizationSplit stabilization_split(const Stabilization& st);

struct StabilizationMaps {
    Ring ring = Ring::F2;
    LinearMap d_II, d_IN, d_NN;
    LinearMap e;                // I -> C[V_n], with the sign (-1)^M over Z
    LinearMap phi_Xn;           // N -> I
    LinearMap phi_On;           // I -> N
    LinearMap phi_On_Xn;        // N -> N, pieces containing X_n and O_n
    std::vector<Grading> gr_I, gr_N;
    TrigradedComplex C_ext;     // before's complex with V_n adjoined
    int partner = 0;            // the O sharing a row with the split X in before
};

// X:SW and X:NE only. Over Z, S_after is the stabilized diagram's assignment;
// before's complex uses its restriction.
StabilizationMaps stabilization_maps(const StabilizationSplit& sp, Ring ring, const SignAssignment* S_after);

struct StabilizationReport {
    CheckResult e_grading, e_chain, phi_degree, phi_chain, phi_On_chain, inverse, homotopy, square, cone;
    bool ok() const {
        return e_grading.ok && e_chain.ok && phi_degree.ok && phi_chain.ok && phi_On_chain.ok && inverse.ok &&
               homotopy.ok && square.ok && cone.ok;
    }
};

// All contracts of the splitting; `depth` bounds the homology windows
// compared between Cone(d_IN) and Cone(V_n - V_partner).
StabilizationReport verify_stabilization(const StabilizationSplit& sp, Ring ring, const SignAssignment* S_after,
                                         int depth = 1);

// Move scripts: one move per line, '#' comments.
struct Move {
    enum class Type { CommuteCols, CommuteRows, SwitchCols, SwitchRows, Stab, Destab } type;
    StabKind kind = StabKind::X_SW;
    int index = 0;
};

std::vector<Move> parse_moves(const std::string& text);
Diagram apply_move(const Diagram& d, const Move& m);
std::string to_string(const Move& m);

// Same markings as sets (marking indices ignored).
bool same_up_to_relabeling(const Diagram& a, const Diagram& b);

// Shortest sequence of commutations (and switches, if allowed) taking `from`
// to `to` up to relabeling and translation of the fundamental domain, searched
// breadth first to `max_depth` moves.
std::optional<std::vector<Move>> find_move_path(const Diagram& from, const Diagram& to, int max_depth,
                                                bool allow_switches);

}  // namespace lensgrid
