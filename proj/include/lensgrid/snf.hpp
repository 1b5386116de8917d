#pragma once

#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lensgrid {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct SmithForm {
    std::vector<BigInt> factors;  // nonzero invariant factors, d1 | d2 | ...
    IntMatrix U, V;               // U A V = D when requested
};

SmithForm smith_normal_form(const IntMatrix& A, bool transforms = false);

// Sparse rows: row -> (col -> value).
using SparseIntMatrix = std::vector<std::map<std::size_t, BigInt>>;

// Nonzero invariant factors of a sparse matrix; unit pivots are eliminated
// sparsely before the dense remainder goes through smith_normal_form.
std::vector<BigInt> invariant_factors(SparseIntMatrix rows, std::size_t ncols);

// Rank over F2 of a sparse matrix with arbitrary integer entries.
std::size_t rank_f2(const SparseIntMatrix& rows, std::size_t ncols);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

}  // namespace lensgrid
