#include "nilc/presentation.hpp"

#include <algorithm>

#include "nilc/errors.hpp"

namespace nilc {

const Subgroup& LayeredAlgebra::subgroup() const
{
    if (!group)
        throw Error("invalid base group: " + group_error);
    return *group;
}

unsigned LayeredAlgebra::depth() const
{
    unsigned top = 0;
    for (const auto& l : layers)
        top = std::max(top, l.level);
    return top + 1;
}

const Layer* LayeredAlgebra::layer(unsigned level) const
{
    for (const auto& l : layers)
        if (l.level == level)
            return &l;
    return nullptr;
}

LayeredAlgebra make_layered_algebra(std::size_t base_dim, std::vector<F2Matrix> group_generators,
                                    std::vector<Layer> layers,
                                    std::optional<AmbientEmbedding> embedding, VarNames base_names,
                                    const Limits& limits)
{
    LayeredAlgebra k;
    k.base_dim = base_dim;
    k.base_names = base_names.empty() ? default_var_names(base_dim) : std::move(base_names);
    k.group_generators = std::move(group_generators);
    k.layers = std::move(layers);
    k.ambient_embedding = std::move(embedding);
    try {
        k.group = group_closure(base_dim, k.group_generators, limits);
    } catch (const Error& e) {
        k.group_error = e.what();
    }
    return k;
}

SKPoint make_point(const Subgroup& g, const F2Matrix& psi) { return SKPoint{psi.cols(), orbit_of(g, psi)}; }

bool ValidationReport::has(const std::string& code) const
{
    return std::any_of(failures.begin(), failures.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

std::vector<Polynomial> sub_piece_basis(const InducedModule& piece, unsigned degree, const Limits& limits)
{
    const auto ring = pulled_back_forms(piece.gamma);
    return module_span_basis(ring, piece.generators, piece.source_dim, degree, limits);
}

namespace {

void validate_piece(const LayeredAlgebra& k, const Layer& layer, const InducedModule& piece,
                    const std::string& where, unsigned max_degree, const Limits& limits,
                    ValidationReport& report)
{
    auto fail = [&](std::string code, const std::string& msg) {
        report.failures.push_back({std::move(code), where + ": " + msg});
    };
    if (piece.suspension != layer.level)
        fail("SuspensionMismatch", "suspension " + std::to_string(piece.suspension) +
                                       " differs from the layer level " + std::to_string(layer.level));
    if (piece.gamma.rows() != k.base_dim || piece.gamma.cols() != piece.source_dim) {
        fail("GammaShape", "gamma must be " + std::to_string(k.base_dim) + "x" +
                               std::to_string(piece.source_dim));
        return;
    }
    if (piece.source_dim > kMaxVars) {
        fail("SourceTooLarge", "source dimension exceeds " + std::to_string(kMaxVars));
        return;
    }
    if (piece.is_full())
        return;
    if (!k.group || !k.group->is_trivial())
        fail("SubRequiresTrivialGroup", "submodule pieces are only supported over a trivial group");
    bool shapes_ok = true;
    for (const auto& gen : piece.generators) {
        if (gen.num_vars() != piece.source_dim) {
            fail("GeneratorVars", "generator over the wrong number of variables");
            shapes_ok = false;
        } else if (!gen.is_homogeneous()) {
            fail("InhomogeneousGenerator", "generator " + format(gen, piece.var_names) +
                                               " is not homogeneous");
            shapes_ok = false;
        }
    }
    if (!shapes_ok)
        return;
    // Steenrod closure of the generated module, degree by degree.
    std::vector<std::vector<Polynomial>> bases;
    for (unsigned d = 0; d <= max_degree; ++d)
        bases.push_back(sub_piece_basis(piece, d, limits));
    for (unsigned d = 0; d <= max_degree; ++d) {
        for (const auto& b : bases[d]) {
            for (unsigned i = 1; i <= d && d + i <= max_degree; ++i) {
                const Polynomial s = sq(i, b);
                if (s.is_zero())
                    continue;
                const DegreeBasis target(piece.source_dim, d + i);
                Echelon span(target.size());
                for (const auto& e : bases[d + i])
                    span.insert(target.coordinates(e));
                if (!span.contains(target.coordinates(s)))
                    fail("SubNotSteenrodClosed",
                         "Sq^" + std::to_string(i) + "(" + format(b, piece.var_names) +
                             ") = " + format(s, piece.var_names) + " must be adjoined");
            }
        }
    }
}

}  // namespace

ValidationReport validate(const LayeredAlgebra& k, unsigned max_degree, const Limits& limits)
{
    ValidationReport report;
    auto fail = [&](std::string code, std::string msg) {
        report.failures.push_back({std::move(code), std::move(msg)});
    };
    if (k.base_dim > kMaxVars)
        fail("BaseTooLarge", "base dimension exceeds " + std::to_string(kMaxVars));
    if (k.base_names.size() != k.base_dim)
        fail("VariableNames", "base needs " + std::to_string(k.base_dim) + " variable names");
    try {
        group_closure(k.base_dim, k.group_generators, limits);
    } catch (const Error& e) {
        fail("InvalidGroup", e.what());
    }

    std::vector<unsigned> levels;
    for (const auto& l : k.layers)
        levels.push_back(l.level);
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (levels[i] != i + 1) {
            fail("NonConsecutiveLevels", "layer levels must be 1, 2, ... in order");
            break;
        }

    for (const auto& layer : k.layers) {
        const std::string lvl = "level " + std::to_string(layer.level);
        for (std::size_t i = 0; i < layer.kernel.size(); ++i)
            validate_piece(k, layer, layer.kernel[i], lvl + " kernel[" + std::to_string(i) + "]",
                           max_degree, limits, report);
        for (std::size_t i = 0; i < layer.cokernel.size(); ++i)
            validate_piece(k, layer, layer.cokernel[i], lvl + " cokernel[" + std::to_string(i) + "]",
                           max_degree, limits, report);
    }

    if (k.ambient_embedding) {
        const auto& e = *k.ambient_embedding;
        if (e.dim != k.base_dim)
            fail("EmbeddingDim", "ambient embedding must live in H*(U)");
        for (const auto& gen : e.generators)
            if (gen.num_vars() != e.dim || !gen.is_homogeneous())
                fail("EmbeddingGenerator", "embedding generators must be homogeneous over " +
                                               std::to_string(e.dim) + " variables");
    }
    return report;
}

std::vector<SKPoint> sk_points(const LayeredAlgebra& k, std::size_t dim_w, const Limits& limits)
{
    std::vector<SKPoint> out;
    for (auto& o : orbits(k.subgroup(), dim_w, limits))
        out.push_back(SKPoint{dim_w, std::move(o)});
    return out;
}

GradedDims piece_dims(const InducedModule& piece, unsigned max_degree, const Limits& limits)
{
    if (piece.is_full())
        return graded_dims(piece.source_dim, max_degree);
    GradedDims g;
    for (unsigned d = 0; d <= max_degree; ++d)
        g.dims.push_back(static_cast<std::int64_t>(sub_piece_basis(piece, d, limits).size()));
    return g;
}

GradedDims realize_slice(const LayeredAlgebra& k, unsigned max_degree, const Limits& limits)
{
    GradedDims out;
    for (const auto& basis : invariants_upto(k.subgroup(), max_degree, limits))
        out.dims.push_back(static_cast<std::int64_t>(basis.size()));
    auto add = [&](const InducedModule& piece, std::int64_t sign) {
        if (piece.suspension > max_degree)
            return;
        const GradedDims m = piece_dims(piece, max_degree - piece.suspension, limits);
        for (unsigned d = piece.suspension; d <= max_degree; ++d)
            out.dims[d] += sign * m.dims[d - piece.suspension];
    };
    for (const auto& layer : k.layers) {
        for (const auto& p : layer.kernel)
            add(p, +1);
        for (const auto& p : layer.cokernel)
            add(p, -1);
    }
    for (std::size_t d = 0; d < out.dims.size(); ++d)
        if (out.dims[d] < 0)
            throw NegativeDimension("presentation has negative dimension " +
                                    std::to_string(out.dims[d]) + " in degree " + std::to_string(d));
    return out;
}

}  // namespace nilc
