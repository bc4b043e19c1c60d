#include <string>

#include "doctest.h"
#include "nilc/centers.hpp"
#include "nilc/errors.hpp"
#include "nilc/serialize.hpp"

using namespace nilc;

namespace {

std::string data(const std::string& name) { return std::string(NILC_DATA_DIR) + "/" + name; }

F2Matrix M(std::vector<std::vector<int>> rows, std::size_t cols = 0) { return F2Matrix::from_rows(rows, cols); }

const F2Matrix kB2 = M({{1, 1}, {0, 1}});
const F2Matrix kX = M({{1}, {0}});
const F2Matrix kY = M({{0}, {1}});

Subgroup b2() { return group_closure(2, std::span<const F2Matrix>(&kB2, 1)); }

InducedModule full(F2Matrix gamma)
{
    InducedModule m;
    m.suspension = 1;
    m.source_dim = gamma.cols();
    m.gamma = gamma;
    m.var_names = default_var_names(gamma.cols());
    return m;
}

InducedModule sub(F2Matrix gamma, const std::vector<std::string>& gens)
{
    InducedModule m = full(gamma);
    m.kind = PieceKind::Sub;
    for (const auto& g : gens)
        m.generators.push_back(parse_polynomial(g, m.var_names));
    return m;
}

SKPoint zero_point(const Subgroup& g) { return make_point(g, F2Matrix(g.ambient_dim, 0)); }

// Every accepted point stays accepted after precomposition with any alpha : V -> W, dim V <= 2.
std::size_t precomposition_violations(const Subgroup& g, const CentreResult& r)
{
    std::size_t bad = 0;
    if (r.centre.mode != CentreMode::Subspace)
        return 0;
    const auto& acc = r.accepted_by_level.back();
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (!acc[i])
            continue;
        for (std::size_t v = 0; v <= 2; ++v)
            for (const auto& alpha : enumerate_maps(v, r.points[i].dim_w))
                for (const auto& m : r.points[i].orbit.members)
                    if (!r.centre.accepts(make_point(g, m * alpha)))
                        ++bad;
    }
    return bad;
}

}  // namespace

TEST_CASE("base centre")
{
    const Subgroup g = b2();
    CHECK(base_centre(g, make_point(g, kX)));
    CHECK_FALSE(base_centre(g, make_point(g, kY)));
    CHECK(base_centre(g, zero_point(g)));
    const Subgroup triv = trivial_group(2);
    for (const auto& psi : enumerate_maps(2, 2))
        CHECK(base_centre(triv, make_point(triv, psi)));
}

TEST_CASE("functor oracle on the small cases")
{
    const Subgroup g = b2();
    CHECK(functor_centre_oracle(g, make_point(g, kX), 2));
    CHECK_FALSE(functor_centre_oracle(g, make_point(g, kY), 2));
    CHECK(functor_centre_oracle(g, zero_point(g), 2));
}

TEST_CASE("augmentations pass the base criterion for every subgroup")
{
    for (const auto& g : all_subgroups(2))
        for (std::size_t w = 0; w <= 3; ++w)
            CHECK(base_centre(g, make_point(g, F2Matrix::zero(2, w))));
}

TEST_CASE("full induced modules")
{
    const Subgroup g = b2();
    const SKPoint x = make_point(g, kX);
    CHECK_FALSE(module_central_full(g, full(M({{1, 0, 0}, {0, 1, 0}})), x));
    CHECK(module_central_full(g, full(F2Matrix::identity(2)), x));
    CHECK_FALSE(module_central_full(g, full(kY), x));
    CHECK(module_central_full(g, full(kY), zero_point(g)));
    CHECK_THROWS_AS(module_central_full(g, sub(kY, {"v"}), x), Error);
}

TEST_CASE("the two readings of the full criterion differ off the base centre")
{
    // orbit of y is {y, x+y}; only x+y lies in the image of gamma.
    const Subgroup g = b2();
    const SKPoint y = make_point(g, kY);
    const InducedModule m = full(M({{1}, {1}}));
    CHECK(module_central_full(g, m, y, Reading::Proof));
    CHECK_FALSE(module_central_full(g, m, y, Reading::Header));
    // On points fixed by G the readings coincide.
    const SKPoint x = make_point(g, kX);
    CHECK(module_central_full(g, m, x, Reading::Proof) == module_central_full(g, m, x, Reading::Header));
}

TEST_CASE("submodule pieces")
{
    const Subgroup triv2 = trivial_group(2);
    const Subgroup triv3 = trivial_group(3);
    const F2Matrix pi = M({{1, 0, 0}, {0, 1, 0}});

    // w is not in pi^*(H*(V2)), so only W = 0 is central.
    const InducedModule m1 = sub(pi, {"u", "v", "w"});
    CHECK_FALSE(sub_generators_contained(m1));
    CHECK(module_central_sub(triv2, m1, zero_point(triv2), 6));
    for (const auto& psi : enumerate_maps(1, 2))
        CHECK_FALSE(module_central_sub(triv2, m1, make_point(triv2, psi), 6));

    // gamma = id: everything is contained and every point passes.
    const InducedModule m2 = sub(F2Matrix::identity(3), {"u^2"});
    CHECK(sub_generators_contained(m2));
    for (const auto& psi : enumerate_maps(2, 3))
        CHECK(module_central_sub(triv3, m2, make_point(triv3, psi), 6));

    // gamma^*(H*(U)) itself along iota_y: central iff Im psi lies on the y axis.
    const InducedModule m3 = sub(kY, {"1"});
    CHECK(sub_generators_contained(m3));
    CHECK(module_central_sub(triv2, m3, make_point(triv2, kY), 6));
    CHECK_FALSE(module_central_sub(triv2, m3, make_point(triv2, kX), 6));
    CHECK(module_central_sub(triv2, m3, make_point(triv2, F2Matrix::zero(2, 2)), 6));

    CHECK_THROWS_AS(module_central_sub(b2(), m3, make_point(b2(), kX), 6), Unsupported);
}

TEST_CASE("layer_central and ck on the examples")
{
    const auto ex1 = load_presentation(data("ex1.json"));
    const auto ex2 = load_presentation(data("ex2.json"));
    const auto ex4 = load_presentation(data("ex4.json"));
    const SKPoint x1 = make_point(ex1.subgroup(), kX);
    CHECK_FALSE(layer_central(ex1, 1, x1, 6));
    CHECK(layer_central(ex2, 1, make_point(ex2.subgroup(), kX), 6));
    CHECK(layer_central(ex4, 1, make_point(ex4.subgroup(), M({{0, 0}, {1, 0}, {1, 1}})), 6));
    CHECK_FALSE(layer_central(ex4, 1, make_point(ex4.subgroup(), M({{1}, {0}, {0}})), 6));

    CHECK_FALSE(ck(ex1, 2, x1, 6));
    CHECK(ck(ex1, 1, x1, 6));
    CHECK(ck(ex2, 2, make_point(ex2.subgroup(), kX), 6));
    CHECK(ck(ex1, 1, zero_point(ex1.subgroup()), 6));
    CHECK_THROWS_AS(ck(ex1, 3, x1, 6), Error);
    CHECK_THROWS_AS(layer_central(ex1, 2, x1, 6), Error);
}

TEST_CASE("centres of the examples")
{
    const auto r1 = centre(load_presentation(data("ex1.json")), 3, 12);
    REQUIRE(r1.per_level.size() == 2);
    CHECK(r1.per_level[0].set.mode == CentreMode::Subspace);
    CHECK(r1.per_level[0].set.z_basis == std::vector<Vec>{0b01});
    CHECK(r1.centre.mode == CentreMode::TrivialOnly);

    const auto r2 = centre(load_presentation(data("ex2.json")), 3, 12);
    CHECK(r2.centre.mode == CentreMode::Subspace);
    CHECK(r2.centre.z_basis == std::vector<Vec>{0b01});

    const auto r3 = centre(load_presentation(data("ex3.json")), 3, 12);
    CHECK(r3.centre.mode == CentreMode::Subspace);
    CHECK(r3.centre.z_basis.empty());

    const auto r4 = centre(load_presentation(data("ex4.json")), 3, 12);
    CHECK(r4.centre.mode == CentreMode::Subspace);
    CHECK(r4.centre.z_basis == std::vector<Vec>{0b010, 0b100});
    CHECK(describe(r4.centre) == "Im ψ ⊆ span{y,z}");

    const auto bare = centre(make_layered_algebra(2, {}, {}), 2, 4);
    CHECK(bare.centre.z_basis.size() == 2);
    CHECK(describe(bare.centre) == "Im ψ ⊆ U (all of S(K))");

    CHECK_THROWS_AS(centre(make_layered_algebra(2, {}, {}), 0, 4), Error);
}

TEST_CASE("filtration is monotone and closed under precomposition")
{
    for (const char* f : {"ex1.json", "ex2.json", "ex3.json", "ex4.json"}) {
        CAPTURE(f);
        const auto k = load_presentation(data(f));
        const auto r = centre(k, 3, 8);
        for (std::size_t lvl = 1; lvl < r.accepted_by_level.size(); ++lvl)
            for (std::size_t i = 0; i < r.points.size(); ++i)
                CHECK((!r.accepted_by_level[lvl][i] || r.accepted_by_level[lvl - 1][i]));
        CHECK(precomposition_violations(k.subgroup(), r) == 0);
    }
}

TEST_CASE("the trivial-only centre of example 1 is not closed under precomposition")
{
    // (0,ε) is central but (F2,ε) is not: no Subspace form fits, hence TrivialOnly.
    const auto k = load_presentation(data("ex1.json"));
    CHECK(ck(k, 2, zero_point(k.subgroup()), 6));
    CHECK_FALSE(ck(k, 2, make_point(k.subgroup(), F2Matrix::zero(2, 1)), 6));
}

TEST_CASE("classify reports sets outside the closed forms as inconclusive")
{
    const Subgroup triv = trivial_group(2);
    std::vector<SKPoint> pts;
    for (std::size_t w = 0; w <= 1; ++w)
        for (const auto& psi : enumerate_maps(w, 2))
            pts.push_back(make_point(triv, psi));
    // pts: 0-dim, then [0], [y], [x], [x+y] by code order.
    std::vector<char> acc{1, 1, 1, 1, 0};  // x and y but not x + y
    const auto c = classify(triv, pts, acc);
    CHECK(c.mode == CentreMode::Inconclusive);
    CHECK(c.raw_accepted.size() == 4);

    std::vector<char> only_dim0{1, 0, 0, 0, 0};
    CHECK(classify(triv, pts, only_dim0).mode == CentreMode::TrivialOnly);
    std::vector<char> zeros{1, 1, 0, 0, 0};
    const auto z = classify(triv, pts, zeros);
    CHECK(z.mode == CentreMode::Subspace);
    CHECK(z.z_basis.empty());
}
