#include "nilc/f2.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "nilc/errors.hpp"

namespace nilc {

namespace {

void check_shape(std::size_t rows, std::size_t cols)
{
    if (rows > F2Matrix::kMaxDim || cols > F2Matrix::kMaxDim)
        throw DimMismatch("matrix shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " exceeds the supported maximum of " +
                          std::to_string(F2Matrix::kMaxDim));
}

// Gaussian elimination on a list of vectors; returns an echelon basis of their span.
std::vector<Vec> echelon(std::vector<Vec> vs)
{
    std::vector<Vec> basis;
    for (Vec v : vs) {
        for (Vec b : basis)
            if (v & (b & -b))
                v ^= b;
        if (!v)
            continue;
        const Vec low = v & -v;
        for (Vec& b : basis)
            if (b & low)
                b ^= v;
        basis.push_back(v);
    }
    return basis;
}

}  // namespace

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
{
    check_shape(rows, cols);
    rows_ = static_cast<std::uint8_t>(rows);
    cols_ = static_cast<std::uint8_t>(cols);
}

F2Matrix F2Matrix::identity(std::size_t n)
{
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols)
{
    const std::size_t ncols = rows.empty() ? cols : rows.front().size();
    F2Matrix m(rows.size(), ncols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != ncols)
            throw DimMismatch("ragged matrix rows");
        for (std::size_t c = 0; c < ncols; ++c) {
            const int e = rows[r][c];
            if (e != 0 && e != 1)
                throw ParseError("matrix entries must be 0 or 1");
            m.set(r, c, e == 1);
        }
    }
    return m;
}

F2Matrix F2Matrix::from_columns(std::size_t rows, std::span<const Vec> columns)
{
    F2Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r)
            m.set(r, c, (columns[c] >> r) & 1u);
    return m;
}

F2Matrix F2Matrix::from_code(std::size_t rows, std::size_t cols, std::uint64_t code)
{
    F2Matrix m(rows, cols);
    const std::size_t n = rows * cols;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, (code >> (n - 1 - (r * cols + c))) & 1u);
    return m;
}

void F2Matrix::set(std::size_t r, std::size_t c, bool value)
{
    const auto bit = static_cast<std::uint16_t>(1u << c);
    if (value)
        rows_bits_[r] |= bit;
    else
        rows_bits_[r] &= static_cast<std::uint16_t>(~bit);
}

Vec F2Matrix::column(std::size_t c) const
{
    Vec v = 0;
    for (std::size_t r = 0; r < rows_; ++r)
        v |= static_cast<Vec>(get(r, c)) << r;
    return v;
}

std::uint64_t F2Matrix::code() const
{
    if (std::size_t{rows_} * cols_ > 64)
        throw CapExceeded("matrix too large for a 64-bit code");
    std::uint64_t code = 0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            code = (code << 1) | static_cast<std::uint64_t>(get(r, c));
    return code;
}

F2Matrix F2Matrix::transpose() const
{
    F2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c))
                t.set(c, r, true);
    return t;
}

Vec F2Matrix::apply(Vec v) const
{
    Vec out = 0;
    for (std::size_t r = 0; r < rows_; ++r)
        out |= static_cast<Vec>(std::popcount(static_cast<Vec>(rows_bits_[r]) & v) & 1) << r;
    return out;
}

F2Matrix F2Matrix::operator*(const F2Matrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw DimMismatch("cannot compose " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                          " with " + std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    F2Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint16_t acc = 0;
        for (std::size_t k = 0; k < cols_; ++k)
            if (get(r, k))
                acc ^= rhs.rows_bits_[k];
        out.rows_bits_[r] = acc;
    }
    return out;
}

F2Matrix F2Matrix::operator+(const F2Matrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimMismatch("matrix sum of different shapes");
    F2Matrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        out.rows_bits_[r] = rows_bits_[r] ^ rhs.rows_bits_[r];
    return out;
}

F2Matrix F2Matrix::column_block(std::size_t first, std::size_t count) const
{
    if (first + count > cols_)
        throw DimMismatch("column block out of range");
    F2Matrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        out.rows_bits_[r] = static_cast<std::uint16_t>((rows_bits_[r] >> first) & ((1u << count) - 1));
    return out;
}

F2Matrix F2Matrix::hconcat(const F2Matrix& rhs) const
{
    if (rows_ != rhs.rows_)
        throw DimMismatch("hconcat of matrices with different row counts");
    F2Matrix out(rows_, std::size_t{cols_} + rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        out.rows_bits_[r] = static_cast<std::uint16_t>(rows_bits_[r] | (rhs.rows_bits_[r] << cols_));
    return out;
}

std::vector<std::vector<int>> F2Matrix::to_rows() const
{
    std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out[r][c] = get(r, c) ? 1 : 0;
    return out;
}

bool F2Matrix::operator==(const F2Matrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        return false;
    return std::equal(rows_bits_.begin(), rows_bits_.begin() + rows_, rhs.rows_bits_.begin());
}

std::strong_ordering F2Matrix::operator<=>(const F2Matrix& rhs) const
{
    if (auto c = rows_ <=> rhs.rows_; c != 0)
        return c;
    if (auto c = cols_ <=> rhs.cols_; c != 0)
        return c;
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint16_t a = rows_bits_[r], b = rhs.rows_bits_[r];
        if (a == b)
            continue;
        // first differing column decides, 1 > 0
        const unsigned c = static_cast<unsigned>(std::countr_zero(static_cast<unsigned>(a ^ b)));
        return ((a >> c) & 1u) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

std::size_t rank(const F2Matrix& m)
{
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.push_back(m.row(r));
    return echelon(std::move(rows)).size();
}

std::vector<Vec> kernel_basis(const F2Matrix& m)
{
    // Column j of m tagged with e_j; a column reducing to zero leaves a kernel vector in its tag.
    std::vector<std::pair<Vec, Vec>> basis;
    std::vector<Vec> kernel;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Vec v = m.column(j);
        Vec tag = Vec{1} << j;
        for (const auto& [b, t] : basis)
            if (v & (b & -b)) {
                v ^= b;
                tag ^= t;
            }
        if (!v) {
            kernel.push_back(tag);
            continue;
        }
        const Vec low = v & -v;
        for (auto& [b, t] : basis)
            if (b & low) {
                b ^= v;
                t ^= tag;
            }
        basis.emplace_back(v, tag);
    }
    return kernel;
}

std::vector<Vec> image_basis(const F2Matrix& m)
{
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back(m.column(c));
    return echelon(std::move(cols));
}

bool is_injective(const F2Matrix& m) { return rank(m) == m.cols(); }

bool is_invertible(const F2Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::optional<F2Matrix> inverse(const F2Matrix& m)
{
    if (!is_invertible(m))
        return std::nullopt;
    return solve(m, F2Matrix::identity(m.rows()));
}

bool image_contained(const F2Matrix& a, const F2Matrix& b)
{
    if (a.rows() != b.rows())
        throw DimMismatch("image comparison across different targets");
    const auto basis = image_basis(b);
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!in_span(basis, a.column(c)))
            return false;
    return true;
}

std::optional<F2Matrix> solve(const F2Matrix& a, const F2Matrix& b)
{
    if (a.rows() != b.rows())
        throw DimMismatch("solve: row counts differ");
    // Echelon basis of Im(a) with each vector's preimage tracked.
    std::vector<std::pair<Vec, Vec>> basis;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Vec v = a.column(j);
        Vec pre = Vec{1} << j;
        for (const auto& [bv, bp] : basis)
            if (v & (bv & -bv)) {
                v ^= bv;
                pre ^= bp;
            }
        if (!v)
            continue;
        const Vec low = v & -v;
        for (auto& [bv, bp] : basis)
            if (bv & low) {
                bv ^= v;
                bp ^= pre;
            }
        basis.emplace_back(v, pre);
    }
    std::vector<Vec> x_cols;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        Vec v = b.column(c);
        Vec x = 0;
        for (const auto& [bv, bp] : basis)
            if (v & (bv & -bv)) {
                v ^= bv;
                x ^= bp;
            }
        if (v)
            return std::nullopt;
        x_cols.push_back(x);
    }
    return F2Matrix::from_columns(a.cols(), x_cols);
}

std::vector<Vec> canonical_basis(std::span<const Vec> vectors)
{
    std::vector<Vec> basis = echelon(std::vector<Vec>(vectors.begin(), vectors.end()));
    std::sort(basis.begin(), basis.end());
    return basis;
}

bool in_span(std::span<const Vec> basis, Vec v)
{
    std::vector<Vec> e(basis.begin(), basis.end());
    e = echelon(std::move(e));
    for (Vec b : e)
        if (v & (b & -b))
            v ^= b;
    return v == 0;
}

bool BitVector::any() const
{
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::lowest() const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w])
            return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
}

BitVector& BitVector::operator^=(const BitVector& rhs)
{
    if (rhs.size_ != size_)
        throw DimMismatch("bit vector sizes differ");
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] ^= rhs.words_[w];
    return *this;
}

BitVector Echelon::reduce(BitVector v) const
{
    if (by_pivot_.empty())
        return v;
    // A row only has bits at or above its pivot, so one ascending pass suffices.
    for (std::size_t p = v.lowest(); p < v.size(); ++p)
        if (v.test(p) && by_pivot_[p] >= 0)
            v ^= rows_[static_cast<std::size_t>(by_pivot_[p])].bits;
    return v;
}

bool Echelon::insert(BitVector v)
{
    if (v.size() != width_)
        throw DimMismatch("echelon width mismatch");
    if (by_pivot_.empty())
        by_pivot_.assign(width_, -1);
    v = reduce(std::move(v));
    if (!v.any())
        return false;
    const std::size_t p = v.lowest();
    by_pivot_[p] = static_cast<std::ptrdiff_t>(rows_.size());
    rows_.push_back(Row{p, std::move(v)});
    return true;
}

bool Echelon::contains(BitVector v) const
{
    if (v.size() != width_)
        throw DimMismatch("echelon width mismatch");
    return !reduce(std::move(v)).any();
}

std::vector<BitVector> kernel_of_columns(const std::vector<BitVector>& columns, std::size_t height)
{
    // Rows are (image | tag) with pivots taken on the image part only.
    struct Row {
        BitVector image;
        BitVector tag;
    };
    const std::size_t n = columns.size();
    std::vector<Row> rows;
    std::vector<std::ptrdiff_t> by_pivot(height, -1);
    std::vector<BitVector> kernel;
    for (std::size_t j = 0; j < n; ++j) {
        BitVector v = columns[j];
        if (v.size() != height)
            throw DimMismatch("kernel_of_columns: column height mismatch");
        BitVector tag(n);
        tag.set(j);
        for (std::size_t p = v.lowest(); p < height; ++p) {
            if (!v.test(p) || by_pivot[p] < 0)
                continue;
            const Row& r = rows[static_cast<std::size_t>(by_pivot[p])];
            v ^= r.image;
            tag ^= r.tag;
        }
        if (!v.any()) {
            kernel.push_back(std::move(tag));
            continue;
        }
        by_pivot[v.lowest()] = static_cast<std::ptrdiff_t>(rows.size());
        rows.push_back(Row{std::move(v), std::move(tag)});
    }
    return kernel;
}

void check_hom_bits(std::size_t bits, const Limits& limits)
{
    if (bits > limits.hom_bits || bits > 63)
        throw CapExceeded("Hom-set with " + std::to_string(bits) + " bits exceeds the cap of " +
                          std::to_string(limits.hom_bits) + " bits");
}

std::vector<F2Matrix> enumerate_maps(std::size_t dim_from, std::size_t dim_to, const Limits& limits)
{
    const std::size_t bits = dim_from * dim_to;
    check_hom_bits(bits, limits);
    const std::uint64_t count = std::uint64_t{1} << bits;
    std::vector<F2Matrix> out;
    out.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code)
        out.push_back(F2Matrix::from_code(dim_to, dim_from, code));
    return out;
}

bool Subgroup::contains(const F2Matrix& g) const
{
    return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup trivial_group(std::size_t ambient_dim)
{
    return Subgroup{ambient_dim, {F2Matrix::identity(ambient_dim)}};
}

Subgroup group_closure(std::size_t ambient_dim, std::span<const F2Matrix> generators,
                       const Limits& limits)
{
    for (const auto& g : generators) {
        if (g.rows() != ambient_dim || g.cols() != ambient_dim)
            throw DimMismatch("group generator is not " + std::to_string(ambient_dim) + "x" +
                              std::to_string(ambient_dim));
        if (!is_invertible(g))
            throw NotInvertible("group generator of rank " + std::to_string(rank(g)) +
                                " is not invertible");
    }
    const F2Matrix id = F2Matrix::identity(ambient_dim);
    std::vector<F2Matrix> elements{id};
    std::unordered_set<std::uint64_t> seen{id.code()};
    // Finite group: closure under multiplication by generators contains inverses.
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (const auto& g : generators) {
            F2Matrix h = g * elements[i];
            if (seen.insert(h.code()).second) {
                elements.push_back(h);
                if (elements.size() > limits.group_order)
                    throw CapExceeded("group order exceeds the cap of " +
                                      std::to_string(limits.group_order));
            }
        }
    }
    std::sort(elements.begin(), elements.end());
    return Subgroup{ambient_dim, std::move(elements)};
}

bool Orbit::contains(const F2Matrix& m) const
{
    return std::binary_search(members.begin(), members.end(), m);
}

Orbit orbit_of(const Subgroup& g, const F2Matrix& psi)
{
    if (psi.rows() != g.ambient_dim)
        throw DimMismatch("map target does not match the group's space");
    Orbit o;
    o.dim_source = psi.cols();
    for (const auto& h : g.elements)
        o.members.push_back(h * psi);
    std::sort(o.members.begin(), o.members.end());
    o.members.erase(std::unique(o.members.begin(), o.members.end()), o.members.end());
    o.representative = o.members.front();
    return o;
}

std::vector<Orbit> orbits_serial(const Subgroup& g, std::size_t dim_source, const Limits& limits)
{
    const std::size_t u = g.ambient_dim;
    const std::size_t bits = dim_source * u;
    check_hom_bits(bits, limits);
    const std::uint64_t count = std::uint64_t{1} << bits;
    std::vector<bool> visited(count, false);
    std::vector<Orbit> out;
    for (std::uint64_t code = 0; code < count; ++code) {
        if (visited[code])
            continue;
        Orbit o = orbit_of(g, F2Matrix::from_code(u, dim_source, code));
        for (const auto& m : o.members)
            visited[m.code()] = true;
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<Vec> fixed_space(const Subgroup& g)
{
    // joint kernel of the stacked (h - I)
    const std::size_t n = g.ambient_dim;
    std::vector<Vec> rows;
    const F2Matrix id = F2Matrix::identity(n);
    for (const auto& h : g.elements) {
        const F2Matrix d = h + id;
        for (std::size_t r = 0; r < n; ++r)
            if (d.row(r))
                rows.push_back(d.row(r));
    }
    rows = echelon(std::move(rows));
    F2Matrix stacked(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c)
            stacked.set(r, c, (rows[r] >> c) & 1u);
    return kernel_basis(stacked);
}

Subgroup stabilizer(const Subgroup& g, const F2Matrix& psi)
{
    Subgroup s{g.ambient_dim, {}};
    for (const auto& h : g.elements)
        if (h * psi == psi)
            s.elements.push_back(h);
    return s;
}

std::vector<Subgroup> all_subgroups(std::size_t n, const Limits& limits)
{
    std::vector<F2Matrix> gl;
    for (const auto& m : enumerate_maps(n, n, limits))
        if (is_invertible(m))
            gl.push_back(m);
    std::vector<Subgroup> out;
    auto add = [&](Subgroup s) {
        for (const auto& t : out)
            if (t.elements == s.elements)
                return;
        out.push_back(std::move(s));
    };
    add(trivial_group(n));
    for (std::size_t i = 0; i < gl.size(); ++i)
        for (std::size_t j = i; j < gl.size(); ++j) {
            const std::array<F2Matrix, 2> gens{gl[i], gl[j]};
            add(group_closure(n, gens, limits));
        }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order())
            return a.order() < b.order();
        return a.elements < b.elements;
    });
    return out;
}

std::string basis_vector_name(std::size_t i, std::size_t dim)
{
    if (dim <= 3)
        return std::string(1, "xyz"[i]);
    return "e" + std::to_string(i + 1);
}

std::string format_vector(Vec v, std::size_t dim)
{
    if (!v)
        return "0";
    std::string s;
    for (std::size_t i = 0; i < dim; ++i)
        if ((v >> i) & 1u) {
            if (!s.empty())
                s += "+";
            s += basis_vector_name(i, dim);
        }
    return s;
}

}  // namespace nilc
