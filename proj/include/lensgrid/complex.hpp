#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lensgrid/generators.hpp"
#include "lensgrid/gradings.hpp"
#include "lensgrid/poly.hpp"
#include "lensgrid/signs.hpp"

namespace lensgrid {

struct TrigradedComplex {
    Ring ring = Ring::F2;
    int nvars = 0;
    std::vector<Grading> grading;
    LinearMap diff;
    std::vector<int> var_component;  // link component of each variable
    std::vector<int> zeroed;         // variables set to zero

    std::size_t size() const { return grading.size(); }
    std::vector<int> active_vars() const;
};

// A grid complex keeps the generator list next to the abstract complex; basis
// index k is GeneratorSpace(d).at(k).
struct GridComplex {
    Diagram d;
    std::vector<Generator> gens;
    TrigradedComplex C;
};

using ParallelogramFilter = std::function<bool(const Parallelogram&)>;
using ParallelogramWeight = std::function<Monomial(const Parallelogram&)>;

// Sum over empty parallelograms accepted by the filter, weighted by the monomial
// and, over Z, by the sign assignment.
LinearMap count_parallelograms(const Diagram& d, const std::vector<Generator>& gens, Ring ring, int nvars,
                               const ParallelogramFilter& accept, const ParallelogramWeight& weight,
                               const SignAssignment* S);

Monomial o_monomial(const Parallelogram& r);

std::vector<Grading> grade_all(const Diagram& d, const std::vector<Generator>& gens);

// Over Z the sign assignment is required; pass nullptr for F2.
GridComplex build_complex(const Diagram& d, Ring ring, const SignAssignment* S = nullptr);

struct CheckResult {
    bool ok = true;
    std::string witness;
};

CheckResult verify_d_squared(const TrigradedComplex& C);
// Every entry of f: M shifts by dM, A by dA, S is preserved (monomials included).
CheckResult check_map_degree(const LinearMap& f, const std::vector<Grading>& src, const std::vector<Grading>& dst,
                             const Rational& dM, const Rational& dA);
// lhs == rhs with a readable witness.
CheckResult check_equal(const LinearMap& lhs, const LinearMap& rhs, const std::string& what);

TrigradedComplex specialize(const TrigradedComplex& C, const std::vector<int>& zeroed);
TrigradedComplex tilde(const TrigradedComplex& C);
// One variable per component survives; the others are zeroed.
TrigradedComplex hat_type(const TrigradedComplex& C);

// The O markings in X_a's row and column.
std::pair<int, int> connector_os(const Diagram& d, int a);
LinearMap phi_X_marker(const Diagram& d, const std::vector<Generator>& gens, Ring ring, const SignAssignment* S, int a);

TrigradedComplex adjoin_variable(const TrigradedComplex& C, int component);
// Cone(f: A -> B), differential [[-dA, 0], [f, dB]]; f has degree (dM, dA) and
// A's part is regraded by (dM + 1, dA).
TrigradedComplex mapping_cone(const TrigradedComplex& A, const TrigradedComplex& B, const LinearMap& f,
                              const Rational& dM, const Rational& dA);
// Block map Cone(f) -> Cone(g) from a square (alpha: A -> A', beta: B -> B'),
// [[alpha, 0], [0, beta]]; requires beta f = g alpha.
LinearMap cone_induced_map(const LinearMap& f, const LinearMap& g, const LinearMap& alpha, const LinearMap& beta);

}  // namespace lensgrid
