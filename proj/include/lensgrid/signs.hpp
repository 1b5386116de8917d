#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lensgrid/generators.hpp"

namespace lensgrid {

// Parallelograms do not see markings, so everything here depends on (p, q, n) only.
struct GridShape {
    int p = 1, q = 0, n = 1;
    bool operator==(const GridShape&) const = default;
    static GridShape of(const Diagram& d) { return {d.p, d.q, d.n}; }
    Diagram bare() const;  // a diagram with this shape; markings are placeholders
};

// Packed key: generator index, SW row, width, height.
std::uint64_t pack_key(const GridShape& g, std::size_t gen_index, int row_sw, int w, int h);

class SignAssignment {
public:
    SignAssignment() = default;
    explicit SignAssignment(GridShape g);

    const GridShape& shape() const { return shape_; }
    // +1 or -1; throws if the parallelogram is unknown.
    int sign(const Parallelogram& r) const;
    int sign(std::uint64_t key) const;
    bool has(std::uint64_t key) const { return eps_.count(key) != 0; }
    void set(std::uint64_t key, int eps) { eps_[key] = static_cast<std::uint8_t>(eps & 1); }
    std::uint64_t key_of(const Parallelogram& r) const;
    std::size_t size() const { return eps_.size(); }
    const std::unordered_map<std::uint64_t, std::uint8_t>& raw() const { return eps_; }

    // Lines "key -> +1|-1" sorted by key text.
    std::string export_text() const;
    static SignAssignment import_text(const GridShape& g, const std::string& text);

private:
    GridShape shape_;
    std::shared_ptr<GeneratorSpace> space_;
    std::unordered_map<std::uint64_t, std::uint8_t> eps_;
};

enum class Axiom { S1, S2, S3 };

struct Constraint {
    Axiom axiom;
    std::vector<std::uint64_t> vars;  // parallelogram keys, with repetition allowed
    int parity;
};

struct ConstraintSystem {
    GridShape shape;
    std::vector<std::uint64_t> variables;  // every embedded parallelogram
    std::vector<Constraint> equations;
    std::size_t unclassified_loops = 0;  // x -> x domains that are neither a row nor a column
};

std::vector<Parallelogram> enumerate_all_parallelograms(const Diagram& d);
ConstraintSystem build_constraints(const GridShape& g);

struct SolveStats {
    std::size_t variables = 0, equations = 0, rank = 0;
    double seconds = 0;
};

class Unsolvable : public Error {
public:
    Unsolvable(const std::string& msg, std::vector<std::size_t> witness)
        : Error(msg), witness(std::move(witness)) {}
    std::vector<std::size_t> witness;  // indices of equations summing to 0 = 1
};

// Free variables take free_value(key) (default 0, i.e. sign +1).
SignAssignment solve_sign_assignment(const ConstraintSystem& sys,
                                     const std::function<int(std::uint64_t)>& free_value = {},
                                     SolveStats* stats = nullptr);
// Cached per shape.
std::shared_ptr<const SignAssignment> solved_signs(const GridShape& g);

struct AxiomReport {
    std::size_t checked = 0;
    std::vector<std::size_t> violations;  // equation indices
    bool ok() const { return violations.empty(); }
};
AxiomReport verify_axioms(const ConstraintSystem& sys, const SignAssignment& S);

// Flip every parallelogram from x to y by g(x) + g(y).
SignAssignment gauge_transform(const SignAssignment& S, const std::function<int(std::size_t)>& g);

std::string key_text(const GridShape& g, std::uint64_t key);

}  // namespace lensgrid
