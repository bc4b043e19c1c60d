#include "nilc/centers.hpp"

#include <algorithm>
#include <map>

#include "nilc/errors.hpp"
#include "nilc/kernels.hpp"

namespace nilc {

namespace {

std::vector<Vec> columns_of(const F2Matrix& m)
{
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back(m.column(c));
    return cols;
}

bool image_in(const F2Matrix& psi, std::span<const Vec> basis)
{
    for (std::size_t c = 0; c < psi.cols(); ++c)
        if (!in_span(basis, psi.column(c)))
            return false;
    return true;
}

}  // namespace

bool CentreDescription::accepts(const SKPoint& pt) const
{
    switch (mode) {
    case CentreMode::TrivialOnly:
        return pt.dim_w == 0;
    case CentreMode::Subspace:
        return std::all_of(pt.orbit.members.begin(), pt.orbit.members.end(),
                           [&](const F2Matrix& m) { return image_in(m, z_basis); });
    case CentreMode::Inconclusive:
        return std::any_of(raw_accepted.begin(), raw_accepted.end(),
                           [&](const SKPoint& a) { return a.orbit == pt.orbit; });
    }
    return false;
}

std::string describe(const CentreDescription& c)
{
    switch (c.mode) {
    case CentreMode::TrivialOnly:
        return "trivial only {(0,ε)}";
    case CentreMode::Subspace: {
        if (c.z_basis.empty())
            return "Im ψ = 0 (augmentations (W,ε) for all W)";
        if (c.z_basis.size() == c.u_dim)
            return "Im ψ ⊆ U (all of S(K))";
        std::string s = "Im ψ ⊆ span{";
        for (std::size_t i = 0; i < c.z_basis.size(); ++i)
            s += (i ? "," : "") + format_vector(c.z_basis[i], c.u_dim);
        return s + "}";
    }
    case CentreMode::Inconclusive:
        return "inconclusive (" + std::to_string(c.raw_accepted.size()) +
               " accepted points outside the closed forms)";
    }
    return {};
}

bool base_centre(const Subgroup& g, const SKPoint& pt)
{
    const auto fixed = fixed_space(g);
    return image_in(pt.psi(), fixed);
}

bool functor_centre_oracle(const Subgroup& g, const SKPoint& pt, std::size_t probe_dim_max,
                           const Limits& limits)
{
    const std::size_t w = pt.dim_w;
    for (std::size_t v = 0; v <= probe_dim_max; ++v) {
        const auto targets = orbits(g, v, limits);
        std::map<F2Matrix, std::size_t> fiber;  // orbit representative of theta|V -> count
        for (const auto& o : orbits(g, w + v, limits)) {
            const F2Matrix& theta = o.representative;
            if (!pt.orbit.contains(theta.column_block(0, w)))
                continue;
            ++fiber[orbit_of(g, theta.column_block(w, v)).representative];
        }
        if (fiber.size() != targets.size())
            return false;
        for (const auto& [rep, n] : fiber)
            if (n != 1)
                return false;
    }
    return true;
}

bool module_central_full(const Subgroup& g, const InducedModule& piece, const SKPoint& pt,
                         Reading reading)
{
    if (!piece.is_full())
        throw Error("module_central_full called on a submodule piece");
    if (pt.dim_w == 0)
        return true;
    if (!is_injective(piece.gamma))
        return false;
    // Distinct members g.psi with image inside Im(gamma); exactly one is required.
    const std::vector<F2Matrix> candidates =
        reading == Reading::Proof ? pt.orbit.members : std::vector<F2Matrix>{pt.psi()};
    (void)g;
    std::size_t inside = 0;
    for (const auto& m : candidates)
        if (image_contained(m, piece.gamma))
            ++inside;
    return inside == 1;
}

bool sub_generators_contained(const InducedModule& piece, const Limits& limits)
{
    const auto forms = pulled_back_forms(piece.gamma);
    for (const auto& gen : piece.generators)
        if (!gen.is_zero() && !subalgebra_membership(gen, forms, gen.degree(), limits))
            return false;
    return true;
}

bool module_central_sub(const Subgroup& g, const InducedModule& piece, const SKPoint& pt,
                        unsigned /*max_degree*/, const Limits& limits)
{
    if (piece.is_full())
        throw Error("module_central_sub called on a full piece");
    if (!g.is_trivial())
        throw Unsupported("submodule pieces need a trivial base group");
    if (pt.dim_w == 0)
        return true;
    if (!sub_generators_contained(piece, limits))
        return false;
    return image_contained(pt.psi(), piece.gamma);
}

bool layer_central(const LayeredAlgebra& k, unsigned level, const SKPoint& pt, unsigned max_degree,
                   const Limits& limits, Reading reading)
{
    const Layer* layer = k.layer(level);
    if (!layer)
        throw Error("no layer at level " + std::to_string(level));
    const Subgroup& g = k.subgroup();
    // Both sides of the exact sequence constrain alike; each piece is desuspended first.
    auto central = [&](const InducedModule& piece) {
        return piece.is_full() ? module_central_full(g, piece, pt, reading)
                               : module_central_sub(g, piece, pt, max_degree, limits);
    };
    return std::all_of(layer->kernel.begin(), layer->kernel.end(), central) &&
           std::all_of(layer->cokernel.begin(), layer->cokernel.end(), central);
}

bool ck(const LayeredAlgebra& k, unsigned target_k, const SKPoint& pt, unsigned max_degree,
        const Limits& limits, Reading reading)
{
    if (target_k < 1 || target_k > k.depth())
        throw Error("level " + std::to_string(target_k) + " outside 1.." + std::to_string(k.depth()));
    if (!base_centre(k.subgroup(), pt))
        return false;
    for (unsigned level = 1; level < target_k; ++level)
        if (k.layer(level) && !layer_central(k, level, pt, max_degree, limits, reading))
            return false;
    return true;
}

CentreDescription classify(const Subgroup& g, std::span<const SKPoint> points,
                           std::span<const char> accepted)
{
    CentreDescription out;
    out.u_dim = g.ambient_dim;
    std::vector<Vec> images;
    bool positive_dim_accepted = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!accepted[i])
            continue;
        if (points[i].dim_w > 0)
            positive_dim_accepted = true;
        for (const auto& m : points[i].orbit.members)
            for (Vec c : columns_of(m))
                images.push_back(c);
    }
    CentreDescription candidate;
    candidate.u_dim = g.ambient_dim;
    candidate.z_basis = canonical_basis(images);
    if (candidate.z_basis.empty() && !positive_dim_accepted) {
        candidate.mode = CentreMode::TrivialOnly;
        candidate.z_basis.clear();
    } else {
        candidate.mode = CentreMode::Subspace;
    }

    bool fits = true;
    // Z must be pointwise fixed, so that every orbit with image in Z is a singleton.
    const auto fixed = fixed_space(g);
    for (Vec z : candidate.z_basis)
        fits = fits && in_span(fixed, z);
    for (std::size_t i = 0; i < points.size() && fits; ++i)
        fits = candidate.accepts(points[i]) == static_cast<bool>(accepted[i]);
    if (fits)
        return candidate;

    out.mode = CentreMode::Inconclusive;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (accepted[i])
            out.raw_accepted.push_back(points[i]);
    return out;
}

CentreResult centre(const LayeredAlgebra& k, std::size_t max_dim_w, unsigned max_degree,
                    const Limits& limits)
{
    if (max_dim_w == 0)
        throw Error("max_dim_w must be at least 1 to tell the closed forms apart");
    CentreResult result;
    for (std::size_t w = 0; w <= max_dim_w; ++w)
        for (auto& pt : sk_points(k, w, limits))
            result.points.push_back(std::move(pt));
    const Subgroup& g = k.subgroup();
    for (unsigned level = 1; level <= k.depth(); ++level) {
        LevelEntry entry;
        entry.level = level;
        auto flags = evaluate_points(result.points, [&](const SKPoint& pt) {
            return ck(k, level, pt, max_degree, limits, Reading::Proof);
        });
        const auto header = evaluate_points(result.points, [&](const SKPoint& pt) {
            return ck(k, level, pt, max_degree, limits, Reading::Header);
        });
        entry.set = classify(g, result.points, flags);
        entry.header_reading = classify(g, result.points, header);
        result.per_level.push_back(std::move(entry));
        result.accepted_by_level.push_back(std::move(flags));
    }
    result.centre = result.per_level.back().set;
    return result;
}

}  // namespace nilc
