#pragma once

// Layered presentations of unstable algebras: a base H*(U)^G plus, per level k,
// the kernel and cokernel pieces of the comparison map between successive
// nil-localizations, each piece a suspended induced module.

#include <optional>
#include <string>
#include <vector>

#include "nilc/f2.hpp"
#include "nilc/poly.hpp"

namespace nilc {

enum class PieceKind { Full, Sub };

// Sigma^s H*(V', [gamma]) (Full) or the submodule of it generated by
// `generators` over H*(U) (Sub).
struct InducedModule {
    unsigned suspension = 0;
    std::size_t source_dim = 0;
    F2Matrix gamma;  // dim U x source_dim
    PieceKind kind = PieceKind::Full;
    std::vector<Polynomial> generators;  // Sub only, over source_dim variables
    VarNames var_names;                  // names of the coordinate forms of V'

    bool is_full() const { return kind == PieceKind::Full; }
};

struct Layer {
    unsigned level = 1;
    std::vector<InducedModule> kernel;
    std::vector<InducedModule> cokernel;
};

// K given as the subalgebra of H*(F2^dim) generated by `generators`.
struct AmbientEmbedding {
    std::size_t dim = 0;
    VarNames var_names;
    std::vector<Polynomial> generators;
};

struct LayeredAlgebra {
    std::size_t base_dim = 0;
    VarNames base_names;
    std::vector<F2Matrix> group_generators;
    // Closure of group_generators; empty when the generators are invalid (see validate()).
    std::optional<Subgroup> group;
    std::string group_error;
    std::vector<Layer> layers;
    std::optional<AmbientEmbedding> ambient_embedding;

    // The resolved group; throws Error when the generators did not close to a group.
    const Subgroup& subgroup() const;
    // 1 + highest level; the presentation is taken to be nil_depth-closed.
    unsigned depth() const;
    const Layer* layer(unsigned level) const;
};

// Builds the algebra and closes the group; closure failures are kept for validate().
LayeredAlgebra make_layered_algebra(std::size_t base_dim, std::vector<F2Matrix> group_generators,
                                    std::vector<Layer> layers,
                                    std::optional<AmbientEmbedding> embedding = std::nullopt,
                                    VarNames base_names = {}, const Limits& limits = {});

// Class of psi: W -> U under G; one element of S(K).
struct SKPoint {
    std::size_t dim_w = 0;
    Orbit orbit;

    const F2Matrix& psi() const { return orbit.representative; }
};

SKPoint make_point(const Subgroup& g, const F2Matrix& psi);

struct Diagnostic {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Diagnostic> failures;

    bool ok() const { return failures.empty(); }
    bool has(const std::string& code) const;
};

ValidationReport validate(const LayeredAlgebra& k, unsigned max_degree, const Limits& limits = {});

// One point per G-orbit of Hom(F2^dim_w, U).
std::vector<SKPoint> sk_points(const LayeredAlgebra& k, std::size_t dim_w, const Limits& limits = {});

// Degreewise dims of the unsuspended piece M' (the module before Sigma^s).
GradedDims piece_dims(const InducedModule& piece, unsigned max_degree, const Limits& limits = {});
// Degree-d basis of a Sub piece: H*(U)-multiples of the generators through gamma.
std::vector<Polynomial> sub_piece_basis(const InducedModule& piece, unsigned degree,
                                        const Limits& limits = {});

// dims of the base invariants plus kernel pieces minus cokernel pieces, each
// shifted by its suspension. Throws NegativeDimension.
GradedDims realize_slice(const LayeredAlgebra& k, unsigned max_degree, const Limits& limits = {});

}  // namespace nilc
