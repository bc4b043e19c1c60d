#pragma once

// Linear algebra over the two-element field, Hom-set enumeration and the
// finite-group machinery (closure, orbits, fixed vectors) used everywhere else.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nilc {

// Desk-scale guardrails. Every enumerating operation takes one of these.
struct Limits {
    unsigned hom_bits = 24;            // max dim_from * dim_to for a Hom-set
    std::size_t group_order = 10000;   // max |G| during closure
    std::size_t product_basis = 1u << 18;  // max spanning set in subalgebra tests
};

// Vectors of F2^n with n <= kMaxDim are stored as bit masks, coordinate i at bit i.
using Vec = std::uint64_t;

// Dense matrix over F2 with at most kMaxDim rows and columns. Row r is a bit
// mask with column c at bit c. Value type, no heap storage.
class F2Matrix {
public:
    static constexpr std::size_t kMaxDim = 16;

    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols);

    static F2Matrix identity(std::size_t n);
    static F2Matrix zero(std::size_t rows, std::size_t cols) { return F2Matrix(rows, cols); }
    // Build from explicit 0/1 rows; `cols` is only consulted when `rows` is empty.
    static F2Matrix from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols = 0);
    static F2Matrix from_columns(std::size_t rows, std::span<const Vec> columns);
    // Inverse of code(); the matrix with this row-major bit string.
    static F2Matrix from_code(std::size_t rows, std::size_t cols, std::uint64_t code);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return (rows_bits_[r] >> c) & 1u; }
    void set(std::size_t r, std::size_t c, bool value);
    Vec row(std::size_t r) const { return rows_bits_[r]; }
    Vec column(std::size_t c) const;

    // Row-major bit string read as an integer, entry (0,0) most significant.
    // Numeric order of codes is the lexicographic order on matrices of one shape.
    std::uint64_t code() const;

    F2Matrix transpose() const;
    Vec apply(Vec v) const;
    F2Matrix operator*(const F2Matrix& rhs) const;
    F2Matrix operator+(const F2Matrix& rhs) const;

    // Columns [first, first + count).
    F2Matrix column_block(std::size_t first, std::size_t count) const;
    // [this | rhs]
    F2Matrix hconcat(const F2Matrix& rhs) const;

    std::vector<std::vector<int>> to_rows() const;

    bool operator==(const F2Matrix& rhs) const;
    // Shape first, then row-major bit string lexicographically.
    std::strong_ordering operator<=>(const F2Matrix& rhs) const;

private:
    std::uint8_t rows_ = 0;
    std::uint8_t cols_ = 0;
    std::array<std::uint16_t, kMaxDim> rows_bits_{};
};

std::size_t rank(const F2Matrix& m);
// Basis of {v : m v = 0}, vectors of length m.cols().
std::vector<Vec> kernel_basis(const F2Matrix& m);
// Basis of the column space, vectors of length m.rows().
std::vector<Vec> image_basis(const F2Matrix& m);
bool is_injective(const F2Matrix& m);
bool is_invertible(const F2Matrix& m);
std::optional<F2Matrix> inverse(const F2Matrix& m);
// Im(a) contained in Im(b); both must have the same number of rows.
bool image_contained(const F2Matrix& a, const F2Matrix& b);
// Some x with a * x = b, if one exists.
std::optional<F2Matrix> solve(const F2Matrix& a, const F2Matrix& b);
// Fully reduced echelon basis of the span, sorted ascending. Equal spans give equal bases.
std::vector<Vec> canonical_basis(std::span<const Vec> vectors);
// Is v in the span of `basis`?
bool in_span(std::span<const Vec> basis, Vec v);

// Arbitrary-length bit vector for the degreewise linear algebra on polynomials.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    bool any() const;
    // Lowest set index, or size() when zero.
    std::size_t lowest() const;
    BitVector& operator^=(const BitVector& rhs);
    bool operator==(const BitVector&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Incremental row echelon form. Each row may carry a tag vector that records
// the combination of inserted vectors it came from, which gives kernels for free.
class Echelon {
public:
    explicit Echelon(std::size_t width) : width_(width) {}

    // Returns true when v was independent of the rows so far.
    bool insert(BitVector v);
    bool contains(BitVector v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    // Reduced form of v; zero iff v is in the span.
    BitVector reduce(BitVector v) const;

private:
    struct Row {
        std::size_t pivot;
        BitVector bits;
    };
    std::size_t width_;
    std::vector<Row> rows_;                // sorted by pivot
    std::vector<std::ptrdiff_t> by_pivot_;  // pivot -> index into rows_, -1 if none
};

// Kernel of the linear map sending e_j to columns[j]; vectors of length columns.size().
std::vector<BitVector> kernel_of_columns(const std::vector<BitVector>& columns, std::size_t height);

// All 2^(dim_from * dim_to) maps F2^dim_from -> F2^dim_to (dim_to x dim_from
// matrices) in increasing code order.
std::vector<F2Matrix> enumerate_maps(std::size_t dim_from, std::size_t dim_to,
                                     const Limits& limits = {});
// Throws CapExceeded when a Hom-set with this many bits may not be enumerated.
void check_hom_bits(std::size_t bits, const Limits& limits);

// Finite subgroup of GL(ambient_dim, F2), elements sorted by the matrix order.
struct Subgroup {
    std::size_t ambient_dim = 0;
    std::vector<F2Matrix> elements;

    std::size_t order() const { return elements.size(); }
    bool is_trivial() const { return elements.size() <= 1; }
    bool contains(const F2Matrix& g) const;
};

Subgroup trivial_group(std::size_t ambient_dim);
Subgroup group_closure(std::size_t ambient_dim, std::span<const F2Matrix> generators,
                       const Limits& limits = {});

// A G-orbit of maps W -> U under post-composition.
struct Orbit {
    std::size_t dim_source = 0;
    F2Matrix representative;       // smallest member
    std::vector<F2Matrix> members;  // sorted, deduplicated

    bool contains(const F2Matrix& m) const;
    bool operator==(const Orbit&) const = default;
};

// Partition of Hom(F2^dim_source, U) into G-orbits, sorted by representative.
// Parallel over the Hom-set.
std::vector<Orbit> orbits(const Subgroup& g, std::size_t dim_source, const Limits& limits = {});
// Single-threaded reference for orbits(); same output.
std::vector<Orbit> orbits_serial(const Subgroup& g, std::size_t dim_source,
                                 const Limits& limits = {});
// The orbit of one map.
Orbit orbit_of(const Subgroup& g, const F2Matrix& psi);

// Basis of U^G = {v : g v = v for all g}.
std::vector<Vec> fixed_space(const Subgroup& g);

// {g in G : g * psi == psi}
Subgroup stabilizer(const Subgroup& g, const F2Matrix& psi);

// Every subgroup of GL(n, F2), by closing all pairs of elements. Small n only.
std::vector<Subgroup> all_subgroups(std::size_t n, const Limits& limits = {});

// "x", "y", "z" for dims <= 3, else "e1", "e2", ...
std::string basis_vector_name(std::size_t i, std::size_t dim);
// e.g. "x+y"
std::string format_vector(Vec v, std::size_t dim);

}  // namespace nilc
