#include "nilc/comodule.hpp"

#include <algorithm>
#include <map>

#include "nilc/errors.hpp"

namespace nilc {

namespace {

// Split a tensor by its right factor: coefficient monomial -> left factor.
std::map<std::uint64_t, Polynomial> by_coefficient(const Polynomial& p, std::size_t ambient)
{
    std::map<std::uint64_t, Polynomial> out;
    std::map<std::uint64_t, std::vector<Monomial>> terms;
    for (Monomial m : p.terms()) {
        Monomial left, right;
        for (std::size_t i = 0; i < p.num_vars(); ++i) {
            if (i < ambient)
                left.set_exponent(i, m.exponent(i));
            else
                right.set_exponent(i - ambient, m.exponent(i));
        }
        terms[right.packed].push_back(left);
    }
    for (auto& [key, ms] : terms)
        out.emplace(key, Polynomial(ambient, std::move(ms)));
    return out;
}

std::vector<Polynomial> ambient_identity(std::size_t n, std::size_t total)
{
    std::vector<Polynomial> v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(Polynomial::var(total, i));
    return v;
}

std::vector<Monomial> monomials_upto(std::size_t n, unsigned max_degree)
{
    std::vector<Monomial> out;
    for (unsigned d = 0; d <= max_degree; ++d) {
        const DegreeBasis b(n, d);
        out.insert(out.end(), b.monomials().begin(), b.monomials().end());
    }
    return out;
}

}  // namespace

Coaction coaction_from_point(std::size_t ambient_dim, const F2Matrix& f, VarNames coefficient_names)
{
    if (f.rows() != ambient_dim)
        throw DimMismatch("coaction_from_point: the map must land in a space of dimension " +
                          std::to_string(ambient_dim));
    Coaction k;
    k.ambient_vars = ambient_dim;
    k.coefficient_vars = f.cols();
    k.coefficient_names =
        coefficient_names.empty() ? default_coefficient_names(f.cols()) : std::move(coefficient_names);
    if (k.coefficient_names.size() != k.coefficient_vars)
        throw DimMismatch("coaction_from_point: wrong number of coefficient names");
    const std::size_t n = k.tensor_vars();
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        Polynomial im = Polynomial::var(n, i);
        for (std::size_t j = 0; j < f.cols(); ++j)
            if (f.get(i, j))
                im += Polynomial::var(n, ambient_dim + j);
        k.images.push_back(std::move(im));
    }
    return k;
}

std::optional<F2Matrix> affine_point(const Coaction& k)
{
    F2Matrix f(k.ambient_vars, k.coefficient_vars);
    const std::size_t n = k.tensor_vars();
    for (std::size_t i = 0; i < k.ambient_vars; ++i) {
        const Polynomial rest = k.images[i] + Polynomial::var(n, i);
        for (Monomial m : rest.terms()) {
            if (m.degree() != 1)
                return std::nullopt;
            std::size_t v = 0;
            while (m.exponent(v) == 0)
                ++v;
            if (v < k.ambient_vars)
                return std::nullopt;
            f.set(i, v - k.ambient_vars, true);
        }
    }
    return f;
}

Polynomial apply(const Coaction& k, const Polynomial& p)
{
    if (p.num_vars() != k.ambient_vars)
        throw DimMismatch("coaction applied to a polynomial over the wrong number of variables");
    return substitute(p, k.images);
}

std::string format_tensor(const Polynomial& p, const VarNames& ambient, const VarNames& coefficients,
                          bool suspended)
{
    if (p.num_vars() != ambient.size() + coefficients.size())
        throw DimMismatch("format_tensor: variable count does not match the names");
    if (p.is_zero())
        return "0";
    struct Term {
        Monomial left, right;
    };
    std::vector<Term> terms;
    for (Monomial m : p.terms()) {
        Term t;
        for (std::size_t i = 0; i < p.num_vars(); ++i) {
            if (i < ambient.size())
                t.left.set_exponent(i, m.exponent(i));
            else
                t.right.set_exponent(i - ambient.size(), m.exponent(i));
        }
        terms.push_back(t);
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        if (a.left.degree() != b.left.degree())
            return a.left.degree() > b.left.degree();
        if (a.left != b.left)
            return a.left > b.left;
        return a.right > b.right;
    });
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty())
            s += " + ";
        s += (suspended ? "σ" : "") + format_monomial(t.left, ambient) + "⊗" +
             format_monomial(t.right, coefficients);
    }
    return s;
}

Polynomial sq_total(unsigned i, const Polynomial& p)
{
    std::map<unsigned, std::vector<Monomial>> parts;
    for (Monomial m : p.terms())
        parts[m.degree()].push_back(m);
    Polynomial out(p.num_vars());
    for (auto& [deg, ms] : parts)
        out += sq(i, Polynomial(p.num_vars(), std::move(ms)));
    return out;
}

AxiomReport check_axioms(const Coaction& k, unsigned max_degree)
{
    const std::size_t n = k.ambient_vars;
    const std::size_t c = k.coefficient_vars;
    const std::size_t nt = n + c;

    // counit: coefficients to zero
    auto counit_images = ambient_identity(n, n);
    for (std::size_t j = 0; j < c; ++j)
        counit_images.push_back(Polynomial::zero(n));
    // Two coefficient sets for coassociativity: ambient, middle, last.
    std::vector<Polynomial> outer, comult;
    for (const auto& im : k.images)
        outer.push_back(im.widen(nt + c));
    for (std::size_t j = 0; j < c; ++j)
        outer.push_back(Polynomial::var(nt + c, nt + j));
    comult = ambient_identity(n, nt + c);
    for (std::size_t j = 0; j < c; ++j)
        comult.push_back(Polynomial::var(nt + c, n + j) + Polynomial::var(nt + c, nt + j));

    AxiomReport report;
    auto fail_once = [&](const std::string& axiom, const Polynomial& w) {
        for (const auto& f : report.failures)
            if (f.axiom == axiom)
                return;
        report.failures.push_back({axiom, w});
    };
    for (Monomial m : monomials_upto(n, max_degree)) {
        const Polynomial p = Polynomial::monomial(n, m);
        const Polynomial kp = apply(k, p);
        if (substitute(kp, counit_images) != p)
            fail_once("counit", p);
        if (substitute(kp, outer) != substitute(kp, comult))
            fail_once("coassociativity", p);
        // Peel off one variable and compare with the product of images.
        for (std::size_t i = 0; i < n; ++i) {
            if (m.exponent(i) == 0)
                continue;
            Monomial rest = m;
            rest.set_exponent(i, m.exponent(i) - 1);
            if (apply(k, Polynomial::monomial(n, rest)) * k.images[i] != kp)
                fail_once("multiplicativity", p);
            break;
        }
        for (unsigned i = 1; i <= m.degree(); ++i)
            if (apply(k, sq(i, p)) != sq_total(i, kp)) {
                fail_once("steenrod", p);
                break;
            }
    }
    return report;
}

Coaction default_piece_coaction(const InducedModule& piece, const Coaction& base)
{
    const auto f = affine_point(base);
    if (!f)
        throw Unsupported("piece coactions can only be derived from an affine base coaction");
    const auto lift = solve(piece.gamma, *f);
    return coaction_from_point(piece.source_dim,
                               lift ? *lift : F2Matrix::zero(piece.source_dim, f->cols()),
                               base.coefficient_names);
}

namespace {

RestrictionReport check_embedding(const LayeredAlgebra& k, const Coaction& kappa, unsigned max_degree,
                                  const Limits& limits)
{
    const auto& e = *k.ambient_embedding;
    if (e.dim != kappa.ambient_vars)
        throw DimMismatch("coaction and ambient embedding live in different rings");
    const VarNames& names = e.var_names.empty() ? k.base_names : e.var_names;
    RestrictionReport report;
    for (const auto& gen : e.generators) {
        if (gen.is_zero() || gen.degree() > max_degree)
            continue;
        const Polynomial image = apply(kappa, gen);
        for (const auto& [coef, left] : by_coefficient(image, kappa.ambient_vars)) {
            if (left.is_zero() || subalgebra_membership(left, e.generators, left.degree(), limits))
                continue;
            RestrictionWitness w;
            w.kind = "not_in_K";
            w.element = gen;
            w.lhs = image;
            w.text = format(gen, names) + " ↦ " +
                     format_tensor(image, names, kappa.coefficient_names) + " has left factor " +
                     format(left, names) + " outside K";
            report.witnesses.push_back(std::move(w));
            break;
        }
    }
    return report;
}

RestrictionReport check_square_zero(const LayeredAlgebra& k, const Coaction& kappa, unsigned max_degree,
                                    const std::vector<Coaction>& piece_coactions, const Limits& limits)
{
    if (k.depth() > 2)
        throw Unsupported("square-zero restriction checks need a single layer");
    if (kappa.ambient_vars != k.base_dim)
        throw DimMismatch("coaction must act on the base forms");
    const Layer* layer = k.layer(1);
    std::vector<const InducedModule*> pieces;
    if (layer) {
        if (!layer->cokernel.empty())
            throw Unsupported("square-zero restriction checks take kernel pieces only");
        for (const auto& p : layer->kernel) {
            if (!p.is_full())
                throw Unsupported("square-zero restriction checks take full pieces only");
            pieces.push_back(&p);
        }
    }
    if (!piece_coactions.empty() && piece_coactions.size() != pieces.size())
        throw DimMismatch("one coaction per layer piece is required");

    const Subgroup& g = k.subgroup();
    const VarNames& names = k.base_names;
    const VarNames& coef = kappa.coefficient_names;
    const std::size_t c = kappa.coefficient_vars;
    RestrictionReport report;

    const auto invariants = invariants_upto(g, max_degree, limits);
    for (unsigned d = 1; d <= max_degree; ++d)
        for (const auto& x : invariants[d]) {
            const Polynomial image = apply(kappa, x);
            for (const auto& [key, left] : by_coefficient(image, kappa.ambient_vars)) {
                const bool fixed = std::all_of(g.elements.begin(), g.elements.end(), [&](const F2Matrix& h) {
                    return pullback(h, left) == left;
                });
                if (fixed)
                    continue;
                RestrictionWitness w;
                w.kind = "base_not_invariant";
                w.element = x;
                w.lhs = image;
                w.text = format(x, names) + " ↦ " + format_tensor(image, names, coef) +
                         " leaves the invariants";
                report.witnesses.push_back(std::move(w));
                break;
            }
        }

    for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
        const InducedModule& piece = *pieces[pi];
        const Coaction kp = piece_coactions.empty() ? default_piece_coaction(piece, kappa) : piece_coactions[pi];
        if (kp.ambient_vars != piece.source_dim || kp.coefficient_vars != c)
            throw DimMismatch("piece coaction has the wrong shape");
        const VarNames& pnames = piece.var_names.empty() ? default_var_names(piece.source_dim) : piece.var_names;

        const auto axioms = check_axioms(kp, max_degree);
        for (const auto& f : axioms.failures) {
            RestrictionWitness w;
            w.kind = "piece_axioms";
            w.piece = pi;
            w.element = f.witness;
            w.text = "piece coaction fails " + f.axiom + " at σ" + format(f.witness, pnames);
            report.witnesses.push_back(std::move(w));
        }

        // (γ^*⊗id) on base tensors
        const std::size_t pt = piece.source_dim + c;
        std::vector<Polynomial> gamma_id;
        for (const auto& form : pulled_back_forms(piece.gamma))
            gamma_id.push_back(form.widen(pt));
        for (std::size_t j = 0; j < c; ++j)
            gamma_id.push_back(Polynomial::var(pt, piece.source_dim + j));

        for (unsigned a = 1; a + piece.suspension <= max_degree; ++a)
            for (const auto& x : invariants[a]) {
                const Polynomial rhs_left = substitute(apply(kappa, x), gamma_id);
                const Polynomial gx = pullback(piece.gamma, x);
                for (unsigned b = 0; a + b + piece.suspension <= max_degree; ++b) {
                    const DegreeBasis basis(piece.source_dim, b);
                    for (Monomial mm : basis.monomials()) {
                        const Polynomial m = Polynomial::monomial(piece.source_dim, mm);
                        const Polynomial lhs = apply(kp, gx * m);
                        const Polynomial rhs = rhs_left * apply(kp, m);
                        if (lhs == rhs)
                            continue;
                        RestrictionWitness w;
                        w.kind = "module_product";
                        w.piece = pi;
                        w.element = x;
                        w.module_part = m;
                        w.lhs = lhs;
                        w.rhs = rhs;
                        w.text = "(" + format(x, names) + ")·σ" + format(m, pnames) + " = σ(" +
                                 format(gx * m, pnames) + ") ↦ " + format_tensor(lhs, pnames, coef, true) +
                                 " but κ(x)·κ(σm) = " + format_tensor(rhs, pnames, coef, true);
                        report.witnesses.push_back(std::move(w));
                    }
                }
            }
    }
    return report;
}

}  // namespace

RestrictionReport check_restriction(const LayeredAlgebra& k, const Coaction& kappa, unsigned max_degree,
                                    const std::vector<Coaction>& piece_coactions, const Limits& limits)
{
    if (k.ambient_embedding)
        return check_embedding(k, kappa, max_degree, limits);
    return check_square_zero(k, kappa, max_degree, piece_coactions, limits);
}

}  // namespace nilc
