#include "nilc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

#include "nilc/errors.hpp"

namespace nilc {

namespace {

void normalize(std::vector<Monomial>& terms)
{
    std::sort(terms.begin(), terms.end());
    std::vector<Monomial> out;
    out.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) % 2 == 1)
            out.push_back(terms[i]);
        i = j;
    }
    terms.swap(out);
}

void check_vars(const Polynomial& p, const Polynomial& q)
{
    if (p.num_vars() != q.num_vars())
        throw DimMismatch("polynomials over " + std::to_string(p.num_vars()) + " and " +
                          std::to_string(q.num_vars()) + " variables");
}

// Exponent vectors of total degree d in n variables, ascending packed order.
void for_each_exponent(std::size_t n, unsigned d, const std::function<void(Monomial)>& fn)
{
    Monomial m;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == n) {
            m.set_exponent(i, left);
            fn(m);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m.set_exponent(i, e);
            rec(i + 1, left - e);
        }
        m.set_exponent(i, 0);
    };
    if (n == 0) {
        if (d == 0)
            fn(m);
        return;
    }
    rec(0, d);
}

}  // namespace

Monomial Monomial::var(std::size_t i, unsigned exponent)
{
    Monomial m;
    m.set_exponent(i, exponent);
    return m;
}

void Monomial::set_exponent(std::size_t i, unsigned e)
{
    if (i >= kMaxVars)
        throw DimMismatch("variable index out of range");
    if (e > 0xffu)
        throw std::overflow_error("monomial exponent exceeds 255");
    const unsigned shift = static_cast<unsigned>(8 * (kMaxVars - 1 - i));
    packed = (packed & ~(std::uint64_t{0xff} << shift)) | (std::uint64_t{e} << shift);
}

unsigned Monomial::degree() const
{
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        d += exponent(i);
    return d;
}

Monomial Monomial::operator*(Monomial rhs) const
{
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exponent(i) + rhs.exponent(i) > 0xffu)
            throw std::overflow_error("monomial exponent exceeds 255");
    return Monomial{packed + rhs.packed};
}

Polynomial::Polynomial(std::size_t num_vars) : num_vars_(num_vars)
{
    if (num_vars > kMaxVars)
        throw DimMismatch("at most " + std::to_string(kMaxVars) + " variables are supported");
}

Polynomial::Polynomial(std::size_t num_vars, std::vector<Monomial> terms) : Polynomial(num_vars)
{
    normalize(terms);
    terms_ = std::move(terms);
}

Polynomial Polynomial::one(std::size_t num_vars) { return Polynomial(num_vars, {Monomial{}}); }

Polynomial Polynomial::var(std::size_t num_vars, std::size_t i)
{
    if (i >= num_vars)
        throw DimMismatch("variable index out of range");
    return Polynomial(num_vars, {Monomial::var(i)});
}

Polynomial Polynomial::monomial(std::size_t num_vars, Monomial m) { return Polynomial(num_vars, {m}); }

bool Polynomial::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    const unsigned d = terms_.front().degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](Monomial m) { return m.degree() == d; });
}

unsigned Polynomial::degree() const
{
    if (!is_homogeneous())
        throw Inhomogeneous("polynomial is not homogeneous");
    return terms_.empty() ? 0 : terms_.front().degree();
}

unsigned Polynomial::max_degree() const
{
    unsigned d = 0;
    for (Monomial m : terms_)
        d = std::max(d, m.degree());
    return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs)
{
    check_vars(*this, rhs);
    std::vector<Monomial> out;
    out.reserve(terms_.size() + rhs.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), rhs.terms_.begin(), rhs.terms_.end(),
                                  std::back_inserter(out));
    terms_.swap(out);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const
{
    Polynomial out = *this;
    out += rhs;
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const
{
    check_vars(*this, rhs);
    std::vector<Monomial> prod;
    prod.reserve(terms_.size() * rhs.terms_.size());
    for (Monomial a : terms_)
        for (Monomial b : rhs.terms_)
            prod.push_back(a * b);
    return Polynomial(num_vars_, std::move(prod));
}

Polynomial Polynomial::pow(unsigned n) const
{
    Polynomial result = one(num_vars_);
    Polynomial base = *this;
    while (n) {
        if (n & 1u)
            result = result * base;
        n >>= 1;
        if (n)
            base = base * base;
    }
    return result;
}

Polynomial Polynomial::widen(std::size_t num_vars) const { return shift_vars(0, num_vars); }

Polynomial Polynomial::shift_vars(std::size_t offset, std::size_t num_vars) const
{
    if (offset + num_vars_ > num_vars)
        throw DimMismatch("target ring too small");
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (Monomial m : terms_) {
        Monomial s;
        for (std::size_t i = 0; i < num_vars_; ++i)
            s.set_exponent(offset + i, m.exponent(i));
        out.push_back(s);
    }
    return Polynomial(num_vars, std::move(out));
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) { return p * q; }

VarNames default_var_names(std::size_t n)
{
    VarNames names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(i < 3 ? std::string(1, "uvw"[i]) : "u" + std::to_string(i + 1));
    return names;
}

VarNames default_coefficient_names(std::size_t n)
{
    if (n == 1)
        return {"t"};
    VarNames names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("t" + std::to_string(i + 1));
    return names;
}

std::string format_monomial(Monomial m, const VarNames& names)
{
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const unsigned e = m.exponent(i);
        if (!e)
            continue;
        if (!s.empty())
            s += "*";
        s += names[i];
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

std::string format(const Polynomial& p, const VarNames& names)
{
    if (names.size() < p.num_vars())
        throw DimMismatch("not enough variable names");
    if (p.is_zero())
        return "0";
    std::vector<Monomial> terms = p.terms();
    std::sort(terms.begin(), terms.end(), [](Monomial a, Monomial b) {
        if (a.degree() != b.degree())
            return a.degree() > b.degree();
        return a.packed > b.packed;
    });
    std::string s;
    for (Monomial m : terms) {
        if (!s.empty())
            s += " + ";
        s += format_monomial(m, names);
    }
    return s;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarNames& names) : text_(text), names_(names) {}

    Polynomial parse()
    {
        Polynomial p = sum();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    Polynomial sum()
    {
        Polynomial acc = product();
        while (consume('+'))
            acc += product();
        return acc;
    }

    Polynomial product()
    {
        Polynomial acc = power();
        while (consume('*'))
            acc = acc * power();
        return acc;
    }

    Polynomial power()
    {
        Polynomial base = atom();
        if (consume('^'))
            base = base.pow(number());
        return base;
    }

    Polynomial atom()
    {
        skip_ws();
        if (consume('(')) {
            Polynomial p = sum();
            if (!consume(')'))
                fail("missing ')'");
            return p;
        }
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const unsigned n = number();
            if (n > 1)
                fail("coefficients other than 0 and 1 are not allowed");
            return n ? Polynomial::one(names_.size()) : Polynomial::zero(names_.size());
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            fail("expected a variable, a constant or '('");
        const std::string_view name = text_.substr(start, pos_ - start);
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return Polynomial::var(names_.size(), i);
        fail("unknown variable '" + std::string(name) + "'");
    }

    unsigned number()
    {
        skip_ws();
        const std::size_t start = pos_;
        unsigned n = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            n = n * 10 + static_cast<unsigned>(text_[pos_] - '0');
            if (n > 100000)
                fail("number too large");
            ++pos_;
        }
        if (start == pos_)
            fail("expected a number");
        return n;
    }

    bool consume(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("polynomial \"" + std::string(text_) + "\" at " + std::to_string(pos_) +
                         ": " + what);
    }

    std::string_view text_;
    const VarNames& names_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarNames& names)
{
    if (names.size() > kMaxVars)
        throw DimMismatch("too many variables");
    return Parser(text, names).parse();
}

Polynomial sq_monomial(unsigned i, Monomial m, std::size_t num_vars)
{
    // Sq(v^n) = v^n (1 + v)^n, so Sq^k(v^n) = C(n, k) v^(n+k); C(n, k) is odd iff k is
    // a bit-submask of n. The Cartan formula distributes i over the variables.
    std::vector<Monomial> out;
    Monomial acc = m;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t var, unsigned left) {
        if (var == num_vars) {
            if (left == 0)
                out.push_back(acc);
            return;
        }
        const unsigned n = m.exponent(var);
        for (unsigned k = 0; k <= std::min(n, left); ++k) {
            if (k & ~n)
                continue;
            acc.set_exponent(var, n + k);
            rec(var + 1, left - k);
        }
        acc.set_exponent(var, n);
    };
    rec(0, i);
    return Polynomial(num_vars, std::move(out));
}

Polynomial sq(unsigned i, const Polynomial& p)
{
    if (!p.is_homogeneous())
        throw Inhomogeneous("Sq^" + std::to_string(i) + " of an inhomogeneous polynomial");
    Polynomial out(p.num_vars());
    for (Monomial m : p.terms())
        out += sq_monomial(i, m, p.num_vars());
    return out;
}

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images)
{
    if (images.size() != p.num_vars())
        throw DimMismatch("substitution needs one image per variable");
    std::size_t target = 0;
    if (!images.empty())
        target = images.front().num_vars();
    for (const auto& im : images)
        if (im.num_vars() != target)
            throw DimMismatch("substitution images live in different rings");
    // powers[j][e] = images[j]^e, filled lazily
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t j, unsigned e) -> const Polynomial& {
        auto& cache = powers[j];
        if (cache.empty())
            cache.push_back(Polynomial::one(target));
        while (cache.size() <= e)
            cache.push_back(cache.back() * images[j]);
        return cache[e];
    };
    std::vector<Monomial> acc;
    for (Monomial m : p.terms()) {
        Polynomial term = Polynomial::one(target);
        for (std::size_t j = 0; j < images.size(); ++j)
            if (const unsigned e = m.exponent(j))
                term = term * power(j, e);
        acc.insert(acc.end(), term.terms().begin(), term.terms().end());
    }
    return Polynomial(target, std::move(acc));
}

std::vector<Polynomial> pulled_back_forms(const F2Matrix& gamma)
{
    std::vector<Polynomial> forms;
    for (std::size_t i = 0; i < gamma.rows(); ++i) {
        Polynomial a(gamma.cols());
        for (std::size_t j = 0; j < gamma.cols(); ++j)
            if (gamma.get(i, j))
                a += Polynomial::var(gamma.cols(), j);
        forms.push_back(std::move(a));
    }
    return forms;
}

Polynomial pullback(const F2Matrix& gamma, const Polynomial& p)
{
    if (p.num_vars() != gamma.rows())
        throw DimMismatch("pullback: polynomial has " + std::to_string(p.num_vars()) +
                          " variables but the map targets a space of dimension " +
                          std::to_string(gamma.rows()));
    const auto forms = pulled_back_forms(gamma);
    return substitute(p, forms);
}

std::int64_t binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || k > n)
        return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

GradedDims graded_dims(std::size_t num_vars, std::size_t max_degree)
{
    GradedDims g;
    for (std::size_t d = 0; d <= max_degree; ++d) {
        if (num_vars == 0)
            g.dims.push_back(d == 0 ? 1 : 0);
        else
            g.dims.push_back(binomial(static_cast<std::int64_t>(d + num_vars - 1),
                                      static_cast<std::int64_t>(num_vars - 1)));
    }
    return g;
}

DegreeBasis::DegreeBasis(std::size_t num_vars, unsigned degree) : num_vars_(num_vars), degree_(degree)
{
    for_each_exponent(num_vars, degree, [this](Monomial m) {
        index_.emplace(m.packed, monomials_.size());
        monomials_.push_back(m);
    });
}

BitVector DegreeBasis::coordinates(const Polynomial& p) const
{
    if (p.num_vars() != num_vars_)
        throw DimMismatch("coordinates: variable count mismatch");
    BitVector v(monomials_.size());
    for (Monomial m : p.terms()) {
        auto it = index_.find(m.packed);
        if (it == index_.end())
            throw Inhomogeneous("term of degree " + std::to_string(m.degree()) +
                                " in a degree-" + std::to_string(degree_) + " basis");
        v.set(it->second);
    }
    return v;
}

Polynomial DegreeBasis::polynomial(const BitVector& v) const
{
    std::vector<Monomial> terms;
    for (std::size_t i = 0; i < monomials_.size(); ++i)
        if (v.test(i))
            terms.push_back(monomials_[i]);
    return Polynomial(num_vars_, std::move(terms));
}

std::vector<std::vector<Polynomial>> invariants_upto(const Subgroup& g, unsigned max_degree,
                                                     const Limits& limits)
{
    const std::size_t n = g.ambient_dim;
    std::vector<std::vector<Polynomial>> out;
    std::vector<std::vector<Polynomial>> form_images;
    for (const auto& h : g.elements)
        if (h != F2Matrix::identity(n))
            form_images.push_back(pulled_back_forms(h));
    for (unsigned d = 0; d <= max_degree; ++d) {
        const DegreeBasis basis(n, d);
        if (form_images.size() * basis.size() > limits.product_basis)
            throw CapExceeded("invariant computation in degree " + std::to_string(d) +
                              " exceeds the cap");
        // Column j stacks (h^* - 1)(m_j) over all non-identity h.
        const std::size_t height = basis.size() * std::max<std::size_t>(form_images.size(), 1);
        std::vector<BitVector> columns;
        for (Monomial m : basis.monomials()) {
            BitVector col(height);
            const Polynomial pm = Polynomial::monomial(n, m);
            for (std::size_t k = 0; k < form_images.size(); ++k) {
                const Polynomial diff = substitute(pm, form_images[k]) + pm;
                for (Monomial t : diff.terms())
                    col.set(k * basis.size() + basis.index(t));
            }
            columns.push_back(std::move(col));
        }
        std::vector<Polynomial> degree_basis;
        for (const auto& k : kernel_of_columns(columns, height))
            degree_basis.push_back(basis.polynomial(k));
        out.push_back(std::move(degree_basis));
    }
    return out;
}

Echelon subalgebra_span(std::span<const Polynomial> generators, unsigned degree,
                        const DegreeBasis& basis, const Limits& limits)
{
    const std::size_t n = basis.num_vars();
    std::vector<Polynomial> gens;
    std::vector<unsigned> degs;
    for (const auto& gen : generators) {
        if (gen.num_vars() != n)
            throw DimMismatch("generator over a different ring");
        const unsigned d = gen.degree();
        if (gen.is_zero() || d == 0)
            continue;  // constants only contribute the empty product
        gens.push_back(gen);
        degs.push_back(d);
    }
    Echelon span(basis.size());
    std::size_t produced = 0;
    std::function<void(std::size_t, unsigned, const Polynomial&)> rec =
        [&](std::size_t i, unsigned left, const Polynomial& acc) {
            if (left == 0) {
                if (++produced > limits.product_basis)
                    throw CapExceeded("product basis in degree " + std::to_string(degree) +
                                      " exceeds the cap");
                span.insert(basis.coordinates(acc));
                return;
            }
            if (i == gens.size())
                return;
            Polynomial cur = acc;
            for (unsigned used = 0; used * degs[i] <= left; ++used) {
                rec(i + 1, left - used * degs[i], cur);
                if ((used + 1) * degs[i] <= left)
                    cur = cur * gens[i];
            }
        };
    rec(0, degree, Polynomial::one(n));
    return span;
}

bool subalgebra_membership(const Polynomial& p, std::span<const Polynomial> generators,
                           unsigned degree, const Limits& limits)
{
    if (!p.is_zero() && p.degree() != degree)
        throw Inhomogeneous("membership test: polynomial is not of degree " + std::to_string(degree));
    const DegreeBasis basis(p.num_vars(), degree);
    return subalgebra_span(generators, degree, basis, limits).contains(basis.coordinates(p));
}

std::vector<Polynomial> module_span_basis(std::span<const Polynomial> ring_generators,
                                          std::span<const Polynomial> module_generators,
                                          std::size_t num_vars, unsigned degree,
                                          const Limits& limits)
{
    const DegreeBasis target(num_vars, degree);
    Echelon span(target.size());
    std::vector<Polynomial> basis;
    for (const auto& m : module_generators) {
        if (m.is_zero())
            continue;
        const unsigned dm = m.degree();
        if (dm > degree)
            continue;
        // ring elements of the complementary degree: enumerate products directly
        std::vector<Polynomial> gens;
        for (const auto& g : ring_generators)
            if (!g.is_zero() && g.degree() > 0)
                gens.push_back(g);
        std::size_t produced = 0;
        std::function<void(std::size_t, unsigned, const Polynomial&)> rec =
            [&](std::size_t i, unsigned left, const Polynomial& acc) {
                if (left == 0) {
                    if (++produced > limits.product_basis)
                        throw CapExceeded("module span exceeds the cap");
                    Polynomial e = acc * m;
                    if (span.insert(target.coordinates(e)))
                        basis.push_back(std::move(e));
                    return;
                }
                if (i == gens.size())
                    return;
                const unsigned dg = gens[i].degree();
                Polynomial cur = acc;
                for (unsigned used = 0; used * dg <= left; ++used) {
                    rec(i + 1, left - used * dg, cur);
                    if ((used + 1) * dg <= left)
                        cur = cur * gens[i];
                }
            };
        rec(0, degree - dm, Polynomial::one(num_vars));
    }
    return basis;
}

}  // namespace nilc
