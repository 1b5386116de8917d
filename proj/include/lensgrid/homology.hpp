#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lensgrid/complex.hpp"
#include "lensgrid/snf.hpp"

namespace lensgrid {

struct PieceKey {
    int S = 0;
    Rational A, M;
    bool operator<(const PieceKey& o) const {
        if (S != o.S) return S < o.S;
        if (A != o.A) return A < o.A;
        return M < o.M;
    }
    bool operator==(const PieceKey&) const = default;
};

struct PieceHomology {
    std::size_t rank = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1
    bool operator==(const PieceHomology&) const = default;
};

// Only pieces with nonzero homology are stored.
using HomologyTable = std::map<PieceKey, PieceHomology>;

// Inclusive bounds on A and M.
struct Window {
    Rational A_lo, A_hi, M_lo, M_hi;
};

// Over F2 ranks come from Gaussian elimination, over Z from Smith normal form.
// A window is required unless every variable has been zeroed.
HomologyTable homology(const TrigradedComplex& C, const std::optional<Window>& window = std::nullopt);

// Dimension of each trigraded chain group inside the window (basis V^k x).
std::map<PieceKey, std::size_t> piece_dimensions(const TrigradedComplex& C, const Window& window);

HomologyTable shift_table(const HomologyTable& t, const Rational& dM, const Rational& dA);
HomologyTable restrict_table(const HomologyTable& t, const Window& w);
std::size_t total_rank(const HomologyTable& t);
bool has_torsion(const HomologyTable& t);
std::string table_json(const HomologyTable& t);
std::string table_text(const HomologyTable& t);

}  // namespace lensgrid
