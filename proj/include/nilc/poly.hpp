#pragma once

// Graded polynomial algebras F2[v1..vn] on degree-one generators with the
// Steenrod-square action, pullbacks along linear maps, invariant rings and
// degreewise subalgebra tests.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nilc/f2.hpp"

namespace nilc {

constexpr std::size_t kMaxVars = 8;

// Exponent vector packed into one word: variable i in byte (7 - i), so integer
// order is lexicographic order with variable 0 most significant.
struct Monomial {
    std::uint64_t packed = 0;

    static Monomial var(std::size_t i, unsigned exponent = 1);
    unsigned exponent(std::size_t i) const
    {
        return static_cast<unsigned>((packed >> (8 * (kMaxVars - 1 - i))) & 0xffu);
    }
    void set_exponent(std::size_t i, unsigned e);
    unsigned degree() const;
    // Throws std::overflow_error if an exponent would pass 255.
    Monomial operator*(Monomial rhs) const;

    auto operator<=>(const Monomial&) const = default;
};

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t num_vars);
    Polynomial(std::size_t num_vars, std::vector<Monomial> terms);  // cancels duplicates in pairs

    static Polynomial zero(std::size_t num_vars) { return Polynomial(num_vars); }
    static Polynomial one(std::size_t num_vars);
    static Polynomial var(std::size_t num_vars, std::size_t i);
    static Polynomial monomial(std::size_t num_vars, Monomial m);

    std::size_t num_vars() const { return num_vars_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const;
    // Common degree of all terms; throws Inhomogeneous otherwise. Zero has degree 0.
    unsigned degree() const;
    unsigned max_degree() const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial pow(unsigned n) const;
    bool operator==(const Polynomial&) const = default;

    // Same polynomial viewed in a ring with more variables appended at the end.
    Polynomial widen(std::size_t num_vars) const;
    // Rename variable i to position offset + i in a ring of num_vars variables.
    Polynomial shift_vars(std::size_t offset, std::size_t num_vars) const;

private:
    std::size_t num_vars_ = 0;
    std::vector<Monomial> terms_;  // sorted ascending, distinct
};

// Multiply two polynomials over the same ring; throws DimMismatch on a variable mismatch.
Polynomial multiply(const Polynomial& p, const Polynomial& q);

// Ordered variable names of a polynomial ring.
using VarNames = std::vector<std::string>;
// u, v, w, u4, u5, ...
VarNames default_var_names(std::size_t n);
// t for one coefficient variable, else t1, t2, ...
VarNames default_coefficient_names(std::size_t n);

// Canonical text: terms by descending degree then descending lex, joined by " + ",
// factors like u^2*v. Zero is "0", the unit "1".
std::string format(const Polynomial& p, const VarNames& names);
std::string format_monomial(Monomial m, const VarNames& names);
// Accepts sums of products of names, "1", "0", powers "^n" and parentheses.
Polynomial parse_polynomial(std::string_view text, const VarNames& names);

// Steenrod square Sq^i on a homogeneous polynomial (Sq^1 v = v^2 on degree-one
// classes, extended by the Cartan formula).
Polynomial sq(unsigned i, const Polynomial& p);
Polynomial sq_monomial(unsigned i, Monomial m, std::size_t num_vars);

// Ring map sending variable j to images[j]; all images share one target ring.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images);
// gamma: V' -> U as a dim U x dim V' matrix; p over the forms of U. Each form a
// goes to a . gamma, a polynomial over the forms of V'.
Polynomial pullback(const F2Matrix& gamma, const Polynomial& p);
// The images of the coordinate forms of U under gamma^*.
std::vector<Polynomial> pulled_back_forms(const F2Matrix& gamma);

struct GradedDims {
    std::vector<std::int64_t> dims;  // indexed by degree 0..D

    std::size_t max_degree() const { return dims.empty() ? 0 : dims.size() - 1; }
    bool operator==(const GradedDims&) const = default;
};

// dims[d] = C(d + n - 1, n - 1)
GradedDims graded_dims(std::size_t num_vars, std::size_t max_degree);
std::int64_t binomial(std::int64_t n, std::int64_t k);

// Monomials of one degree with an index, for coordinates in degreewise linear algebra.
class DegreeBasis {
public:
    DegreeBasis(std::size_t num_vars, unsigned degree);

    std::size_t size() const { return monomials_.size(); }
    std::size_t num_vars() const { return num_vars_; }
    unsigned degree() const { return degree_; }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    std::size_t index(Monomial m) const { return index_.at(m.packed); }

    BitVector coordinates(const Polynomial& p) const;  // p homogeneous of this degree (or zero)
    Polynomial polynomial(const BitVector& v) const;

private:
    std::size_t num_vars_;
    unsigned degree_;
    std::vector<Monomial> monomials_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

// Degree-d basis of H^d(U)^G for d = 0..max_degree under p -> p . g.
std::vector<std::vector<Polynomial>> invariants_upto(const Subgroup& g, unsigned max_degree,
                                                     const Limits& limits = {});

// Span of all products of `generators` with total degree `degree`, as an
// echelon form over the degree basis.
Echelon subalgebra_span(std::span<const Polynomial> generators, unsigned degree,
                        const DegreeBasis& basis, const Limits& limits = {});
bool subalgebra_membership(const Polynomial& p, std::span<const Polynomial> generators,
                           unsigned degree, const Limits& limits = {});

// Basis (as polynomials) of the degree-d part of the module over the ring
// generated by `ring_generators`, spanned by ring products times `module_generators`.
std::vector<Polynomial> module_span_basis(std::span<const Polynomial> ring_generators,
                                          std::span<const Polynomial> module_generators,
                                          std::size_t num_vars, unsigned degree,
                                          const Limits& limits = {});

}  // namespace nilc
