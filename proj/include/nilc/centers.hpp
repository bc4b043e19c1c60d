#pragma once

// Centrality criteria and the level-by-level computation of C_1(K) ⊇ C_2(K) ⊇ ...
// and of the centre C(K) for layered presentations.

#include <string>
#include <vector>

#include "nilc/f2.hpp"
#include "nilc/presentation.hpp"

namespace nilc {

// How a Full piece over a nontrivial base group is tested. Proof: orbit
// conditions over H*(U)^G (the default). Header: the piece is treated as an
// H*(U)-module, so only psi itself is lifted.
enum class Reading { Proof, Header };

enum class CentreMode { TrivialOnly, Subspace, Inconclusive };

struct CentreDescription {
    CentreMode mode = CentreMode::Inconclusive;
    std::size_t u_dim = 0;
    std::vector<Vec> z_basis;            // Subspace only; canonical basis of Z
    std::vector<SKPoint> raw_accepted;  // filled when Inconclusive

    // Does the described set contain this point?
    bool accepts(const SKPoint& pt) const;
    bool operator==(const CentreDescription& rhs) const
    {
        return mode == rhs.mode && u_dim == rhs.u_dim && z_basis == rhs.z_basis;
    }
};

// "trivial only", "Im ψ ⊆ span{x}", ...
std::string describe(const CentreDescription& c);

struct LevelEntry {
    unsigned level = 1;
    CentreDescription set;             // C_level(K)
    CentreDescription header_reading;  // same, with Full pieces tested by the Header reading
};

struct CentreResult {
    CentreDescription centre;  // C(K) = C_depth(K)
    std::vector<LevelEntry> per_level;
    // The sweep itself, for programmatic checks.
    std::vector<SKPoint> points;
    std::vector<std::vector<char>> accepted_by_level;  // [level - 1][point]
};

// Im(psi) pointwise fixed by G.
bool base_centre(const Subgroup& g, const SKPoint& pt);

// Brute force: for every probe space V with dim V <= probe_dim_max, restriction
// from {[theta] in Hom(W+V, U)/G : theta|W in [psi]} to Hom(V, U)/G is a bijection.
bool functor_centre_oracle(const Subgroup& g, const SKPoint& pt, std::size_t probe_dim_max,
                           const Limits& limits = {});

bool module_central_full(const Subgroup& g, const InducedModule& piece, const SKPoint& pt,
                         Reading reading = Reading::Proof);

// Are all generators of a Sub piece in gamma^*(H*(U))?
bool sub_generators_contained(const InducedModule& piece, const Limits& limits = {});
bool module_central_sub(const Subgroup& g, const InducedModule& piece, const SKPoint& pt,
                        unsigned max_degree, const Limits& limits = {});

bool layer_central(const LayeredAlgebra& k, unsigned level, const SKPoint& pt, unsigned max_degree,
                   const Limits& limits = {}, Reading reading = Reading::Proof);

// Membership of pt in C_target(K).
bool ck(const LayeredAlgebra& k, unsigned target_k, const SKPoint& pt, unsigned max_degree,
        const Limits& limits = {}, Reading reading = Reading::Proof);

// Fit an accepted set to one of the closed forms.
CentreDescription classify(const Subgroup& g, std::span<const SKPoint> points,
                           std::span<const char> accepted);

CentreResult centre(const LayeredAlgebra& k, std::size_t max_dim_w, unsigned max_degree,
                    const Limits& limits = {});

}  // namespace nilc
