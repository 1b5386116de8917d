#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lensgrid/generators.hpp"

namespace lensgrid {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "num/den" in lowest terms; integers print without a denominator.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

struct Grading {
    int S = 0;
    Rational M, A;
    bool operator==(const Grading&) const = default;
};

long long I_count(const std::vector<Cell>& A, const std::vector<Cell>& B);

// Correction term; requires 0 < q < p, or (p, q, i) = (1, 0, 0).
Rational d_invariant(int p, int q, int i);
// d(p, q mod p, (q-1) mod p) as used by the Maslov grading.
Rational maslov_correction(int p, int q);

int spin_c(const Diagram& d, const Generator& x);
int spin_c_tilde(const Diagram& d, const Generator& x);

struct MaslovParts {
    long long xx, xm, mx, mm;
    long long tilde() const { return xx - xm - mx + mm; }
};
MaslovParts maslov_parts(const Diagram& d, const Generator& x, bool use_X);
Rational maslov(const Diagram& d, const Generator& x);
Rational maslov_X(const Diagram& d, const Generator& x);
Rational alexander(const Diagram& d, const Generator& x);

// Caches the marking lifts; use for bulk grading.
class Grader {
public:
    explicit Grader(const Diagram& d);
    Grading operator()(const Generator& x) const;
    Rational M(const Generator& x) const;
    Rational MX(const Generator& x) const;

private:
    Diagram d_;
    std::vector<Cell> Ot_, Xt_;
    long long OO_, XX_;
    Rational corr_;
    int ell_;
    Generator xO_;
};

Grading grading(const Diagram& d, const Generator& x);

// floor(M) mod 2.
int maslov_parity(const Rational& M);

}  // namespace lensgrid
