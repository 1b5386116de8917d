#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lensgrid/grid.hpp"

namespace lensgrid {

// Every placement of markings with n = 2 and p <= max_p, one representative per
// translation class, with q ranging over [0, p) coprime to p.
std::vector<Diagram> n2_exhaustive(int max_p);

Diagram random_diagram(int p, int q, int n, std::mt19937_64& rng);
// `count` diagrams with grid number n, p drawn from [1, max_p], q coprime.
std::vector<Diagram> random_diagrams(int n, int max_p, int count, std::uint64_t seed);

// Lexicographically least translate, markings sorted by row.
Diagram translation_representative(const Diagram& d);

struct TorsionScanOptions {
    int min_p = 1, max_p = 3;
    int min_n = 1, max_n = 2;
    int samples = 0;  // 0: every n = 2 diagram in range plus nothing random
    std::uint64_t seed = 1;
};

struct TorsionFinding {
    Diagram d;
    std::string table;  // text form of the tilde homology over Z
    bool torsion = false;
};

struct TorsionScanResult {
    std::vector<TorsionFinding> findings;
    std::size_t scanned = 0, with_torsion = 0;
    std::string log;  // deterministic text log
};

// Sign-refined tilde homology of every diagram in the range; one log line per
// diagram, full reproduction data for anything with torsion.
TorsionScanResult scan_torsion(const std::vector<Diagram>& corpus, std::uint64_t seed);
std::vector<Diagram> scan_corpus(const TorsionScanOptions& opt);

}  // namespace lensgrid
