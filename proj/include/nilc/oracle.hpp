#pragma once

// Brute-force checks straight from the definitions: lifts through induced
// modules, degreewise dimensions of T_(W,psi)(K) against K, and explicit
// non-uniqueness witnesses for submodule pieces.

#include <optional>
#include <vector>

#include "nilc/f2.hpp"
#include "nilc/poly.hpp"
#include "nilc/presentation.hpp"

namespace nilc {

struct LiftReport {
    std::vector<F2Matrix> lifts;  // f : W -> V' with gamma * f in the orbit of psi, ascending

    std::size_t count() const { return lifts.size(); }
};

// Full pieces only. T_(W,psi) of the piece is |lifts| copies of H*(V').
LiftReport lift_count(const Subgroup& g, const InducedModule& piece, const SKPoint& pt,
                      const Limits& limits = {});

struct DegreeComparison {
    unsigned degree = 0;
    std::int64_t lhs = 0;  // dim T_(W,psi)(K) assembled piecewise
    std::int64_t rhs = 0;  // dim K
    bool ok() const { return lhs == rhs; }
};

struct RhoReport {
    std::vector<DegreeComparison> per_degree;
    std::vector<std::size_t> lift_counts;  // one per layer piece, kernel before cokernel

    bool all_equal() const;
};

// Throws Unsupported when K has Sub pieces.
RhoReport rho_check(const LayeredAlgebra& k, const SKPoint& pt, unsigned max_degree,
                    const Limits& limits = {});

struct SubWitness {
    enum class Kind { NoLift, NonUnique };
    Kind kind = Kind::NonUnique;
    // NoLift: a linear form killed by gamma but not by psi.
    Vec form = 0;
    // NonUnique: alpha : W -> ker(gamma), a generator p, and phi_alpha^*(p) - phi_0^*(p)
    // over the forms of V' followed by the forms of W.
    F2Matrix alpha;
    Polynomial generator;
    Polynomial difference;
};

// Trivial base group, dim W >= 1. None iff every generator of degree <= max_degree has
// the same image under all the maps phi_alpha = [id | phi_0 + alpha].
std::optional<SubWitness> sub_falsifier(const InducedModule& piece, const SKPoint& pt,
                                        unsigned max_degree, const Limits& limits = {});

}  // namespace nilc
