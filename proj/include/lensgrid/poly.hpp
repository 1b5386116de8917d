#pragma once

#include <map>
#include <string>
#include <vector>

namespace lensgrid {

enum class Ring { F2, Z };

inline const char* ring_name(Ring r) { return r == Ring::F2 ? "f2" : "z"; }

// Exponent vector of V_0 .. V_{k-1}.
using Monomial = std::vector<int>;

Monomial mono_mul(const Monomial& a, const Monomial& b);
int mono_degree(const Monomial& m);
std::string mono_string(const Monomial& m);

struct Poly {
    std::map<Monomial, long long> terms;

    bool zero() const { return terms.empty(); }
    void add(const Monomial& m, long long c, Ring ring);
    void add(const Poly& p, long long scale, Ring ring);
    Poly times(const Poly& o, Ring ring) const;
    bool operator==(const Poly&) const = default;
    std::string str() const;
};

// Sparse matrix of polynomials; cols[src] maps dst -> entry.
class LinearMap {
public:
    LinearMap() = default;
    LinearMap(std::size_t nsrc, std::size_t ndst, int nvars, Ring ring);

    static LinearMap identity(std::size_t n, int nvars, Ring ring, long long c = 1);
    // c * V_var * Id
    static LinearMap variable(std::size_t n, int nvars, Ring ring, int var, long long c = 1);

    std::size_t nsrc() const { return cols_.size(); }
    std::size_t ndst() const { return ndst_; }
    int nvars() const { return nvars_; }
    Ring ring() const { return ring_; }

    void add(std::size_t src, std::size_t dst, const Monomial& m, long long c);
    void add(std::size_t src, std::size_t dst, const Poly& p, long long scale = 1);
    const std::map<std::size_t, Poly>& column(std::size_t src) const { return cols_[src]; }

    // this o f
    LinearMap after(const LinearMap& f) const;
    LinearMap plus(const LinearMap& o, long long scale = 1) const;
    LinearMap scaled(long long c) const;
    LinearMap reduced(Ring r) const;
    // Sets the listed variables to zero.
    LinearMap specialize(const std::vector<int>& zeroed) const;
    // Appends variables with exponent 0.
    LinearMap with_vars(int nvars) const;
    // Restriction to index subsets (src_idx[k] becomes k, dst likewise).
    LinearMap block(const std::vector<std::size_t>& src_idx, const std::vector<std::size_t>& dst_idx) const;

    bool is_zero() const;
    bool operator==(const LinearMap& o) const;
    std::size_t nonzeros() const;

    struct Witness {
        std::size_t src, dst;
        Poly value;
    };
    // First entry where this and o differ.
    bool first_difference(const LinearMap& o, Witness& w) const;

private:
    std::vector<std::map<std::size_t, Poly>> cols_;
    std::size_t ndst_ = 0;
    int nvars_ = 0;
    Ring ring_ = Ring::F2;
};

}  // namespace lensgrid
