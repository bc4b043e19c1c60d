#pragma once

// H*(W)-coactions on polynomial algebras, the comodule axioms, and whether a
// coaction restricts to an algebra K presented inside H*(U) or as a
// square-zero extension of H*(U)^G.
//
// Tensors are polynomials over the ambient variables followed by the
// coefficient variables; the ambient part is the left tensor factor.

#include <optional>
#include <string>
#include <vector>

#include "nilc/f2.hpp"
#include "nilc/poly.hpp"
#include "nilc/presentation.hpp"

namespace nilc {

struct Coaction {
    std::size_t ambient_vars = 0;
    std::size_t coefficient_vars = 0;
    VarNames coefficient_names;
    std::vector<Polynomial> images;  // image of ambient variable i, over ambient + coefficient vars

    std::size_t tensor_vars() const { return ambient_vars + coefficient_vars; }
};

// a -> a⊗1 + 1⊗(a∘f) for f : W -> U, a dim U x dim W matrix.
Coaction coaction_from_point(std::size_t ambient_dim, const F2Matrix& f, VarNames coefficient_names = {});
// The f of an affine coaction, if the images have that shape.
std::optional<F2Matrix> affine_point(const Coaction& k);

Polynomial apply(const Coaction& k, const Polynomial& p);

// "u^3⊗1 + u^2⊗t + u⊗t^2 + 1⊗t^3"; with suspended, each left factor gets a σ.
std::string format_tensor(const Polynomial& p, const VarNames& ambient, const VarNames& coefficients,
                          bool suspended = false);

// Sq^i on a possibly inhomogeneous polynomial, componentwise.
Polynomial sq_total(unsigned i, const Polynomial& p);

struct AxiomFailure {
    std::string axiom;  // counit, coassociativity, multiplicativity, steenrod
    Polynomial witness;  // ambient monomial
};

struct AxiomReport {
    std::vector<AxiomFailure> failures;  // at most one per axiom, the first in degree order

    bool ok() const { return failures.empty(); }
};

AxiomReport check_axioms(const Coaction& k, unsigned max_degree);

struct RestrictionWitness {
    // not_in_K: a generator whose image has a left factor outside K.
    // base_not_invariant: an invariant whose image has a non-invariant left factor.
    // module_product: x·σm with κ(x·σm) ≠ κ(x)·κ(σm).
    // piece_axioms: the coaction on a layer piece is not itself a comodule structure.
    std::string kind;
    Polynomial element;      // the generator, or x
    Polynomial module_part;  // m, for module_product
    std::size_t piece = 0;
    Polynomial lhs;  // κ of the element (κ_piece(γ^*(x)·m) for module_product)
    Polynomial rhs;  // (γ^*⊗id)(κ(x))·κ_piece(m) for module_product
    std::string text;
};

struct RestrictionReport {
    std::vector<RestrictionWitness> witnesses;

    bool passed() const { return witnesses.empty(); }
};

// Form (a): K has an ambient embedding; every generator's image must lie in K⊗H*(W).
// Form (b): K = H*(U)^G ⊕ Σ(full pieces at level 1, kernel side). Piece coactions
// default to the point f' with γf' = f found by solve(), or the trivial coaction.
RestrictionReport check_restriction(const LayeredAlgebra& k, const Coaction& kappa, unsigned max_degree,
                                    const std::vector<Coaction>& piece_coactions = {},
                                    const Limits& limits = {});

// Coaction used on a Full piece for the given base coaction when none is supplied.
Coaction default_piece_coaction(const InducedModule& piece, const Coaction& base);

}  // namespace nilc
