#include "nilc/oracle.hpp"

#include <algorithm>

#include "nilc/errors.hpp"

namespace nilc {

LiftReport lift_count(const Subgroup& g, const InducedModule& piece, const SKPoint& pt,
                      const Limits& limits)
{
    if (!piece.is_full())
        throw Unsupported("lift_count needs a full induced module");
    if (piece.gamma.rows() != g.ambient_dim || pt.psi().rows() != g.ambient_dim)
        throw DimMismatch("lift_count: gamma and psi must land in U");
    LiftReport report;
    for (const auto& f : enumerate_maps(pt.dim_w, piece.source_dim, limits))
        if (pt.orbit.contains(piece.gamma * f))
            report.lifts.push_back(f);
    return report;
}

bool RhoReport::all_equal() const
{
    return std::all_of(per_degree.begin(), per_degree.end(),
                       [](const DegreeComparison& c) { return c.ok(); });
}

RhoReport rho_check(const LayeredAlgebra& k, const SKPoint& pt, unsigned max_degree,
                    const Limits& limits)
{
    for (const auto& layer : k.layers)
        for (const auto* side : {&layer.kernel, &layer.cokernel})
            for (const auto& piece : *side)
                if (!piece.is_full())
                    throw Unsupported("rho_check does not handle submodule pieces");

    const Subgroup& g = k.subgroup();
    // The component of T_W(H*(U)^G) at [psi] is H*(U)^Stab(psi).
    std::vector<std::int64_t> lhs;
    for (const auto& basis : invariants_upto(stabilizer(g, pt.psi()), max_degree, limits))
        lhs.push_back(static_cast<std::int64_t>(basis.size()));

    RhoReport report;
    auto add = [&](const InducedModule& piece, std::int64_t sign) {
        const std::size_t n = lift_count(g, piece, pt, limits).count();
        report.lift_counts.push_back(n);
        if (piece.suspension > max_degree)
            return;
        const GradedDims m = graded_dims(piece.source_dim, max_degree - piece.suspension);
        for (unsigned d = piece.suspension; d <= max_degree; ++d)
            lhs[d] += sign * static_cast<std::int64_t>(n) * m.dims[d - piece.suspension];
    };
    for (const auto& layer : k.layers) {
        for (const auto& p : layer.kernel)
            add(p, +1);
        for (const auto& p : layer.cokernel)
            add(p, -1);
    }
    const GradedDims rhs = realize_slice(k, max_degree, limits);
    for (unsigned d = 0; d <= max_degree; ++d)
        report.per_degree.push_back({d, lhs[d], rhs.dims[d]});
    return report;
}

std::optional<SubWitness> sub_falsifier(const InducedModule& piece, const SKPoint& pt,
                                        unsigned max_degree, const Limits& limits)
{
    if (piece.is_full())
        throw Unsupported("sub_falsifier needs a submodule piece");
    if (pt.dim_w == 0)
        throw Error("sub_falsifier needs dim W >= 1");
    const F2Matrix& psi = pt.psi();

    const auto phi0 = solve(piece.gamma, psi);
    if (!phi0) {
        // No lift at all: some form vanishes on Im(gamma) but not on Im(psi).
        const F2Matrix gt = piece.gamma.transpose();
        const F2Matrix pt_t = psi.transpose();
        for (Vec form : kernel_basis(gt))
            if (pt_t.apply(form) != 0)
                return SubWitness{SubWitness::Kind::NoLift, form, {}, {}, {}};
        throw Error("sub_falsifier: psi has no lift yet every form killing gamma kills psi");
    }

    const std::size_t vp = piece.source_dim;
    const std::size_t n = vp + pt.dim_w;
    if (n > kMaxVars)
        throw CapExceeded("sub_falsifier: too many variables");
    const auto ker = kernel_basis(piece.gamma);

    // alpha ranges over Hom(W, ker gamma), in ascending code order of alpha itself.
    std::vector<F2Matrix> alphas;
    for (const auto& coeffs : enumerate_maps(pt.dim_w, ker.size(), limits)) {
        F2Matrix a = F2Matrix::from_columns(vp, std::span<const Vec>(ker.data(), ker.size()));
        alphas.push_back(ker.empty() ? F2Matrix::zero(vp, pt.dim_w) : a * coeffs);
    }
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

    auto images_for = [&](const F2Matrix& phi) {
        return pulled_back_forms(F2Matrix::identity(vp).hconcat(phi));
    };
    const auto base_images = images_for(*phi0);
    for (const auto& alpha : alphas) {
        const auto images = images_for(*phi0 + alpha);
        for (const auto& p : piece.generators) {
            if (p.is_zero() || p.degree() > max_degree)
                continue;
            const Polynomial diff = substitute(p, images) + substitute(p, base_images);
            if (!diff.is_zero())
                return SubWitness{SubWitness::Kind::NonUnique, 0, alpha, p, diff};
        }
    }
    return std::nullopt;
}

}  // namespace nilc
