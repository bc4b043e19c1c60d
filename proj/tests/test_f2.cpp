#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "nilc/errors.hpp"
#include "nilc/f2.hpp"

using namespace nilc;

namespace {

F2Matrix M(std::vector<std::vector<int>> rows, std::size_t cols = 0)
{
    return F2Matrix::from_rows(rows, cols);
}

const F2Matrix kB2 = M({{1, 1}, {0, 1}});  // x -> x, y -> x + y
const F2Matrix kSwap = M({{0, 1}, {1, 0}});

// 2x2 determinant over F2 computed from entries, independent of rank().
bool det2(const F2Matrix& m) { return (m.get(0, 0) && m.get(1, 1)) != (m.get(0, 1) && m.get(1, 0)); }

// All v with g v = v for all g, by trying every vector.
std::set<Vec> brute_fixed(const Subgroup& g)
{
    std::set<Vec> out;
    for (Vec v = 0; v < (Vec{1} << g.ambient_dim); ++v)
        if (std::all_of(g.elements.begin(), g.elements.end(), [&](const F2Matrix& h) { return h.apply(v) == v; }))
            out.insert(v);
    return out;
}

std::set<Vec> span_of(const std::vector<Vec>& basis)
{
    std::set<Vec> out{0};
    for (Vec b : basis) {
        std::set<Vec> next = out;
        for (Vec v : out)
            next.insert(v ^ b);
        out = next;
    }
    return out;
}

}  // namespace

TEST_CASE("rank on small matrices")
{
    CHECK(rank(M({{1, 0}, {1, 1}})) == 2);
    CHECK(rank(M({{1, 1}, {1, 1}})) == 1);
    CHECK(rank(F2Matrix::zero(3, 3)) == 0);
    CHECK(rank(F2Matrix::identity(5)) == 5);
}

TEST_CASE("kernel and image bases have complementary sizes")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        F2Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.set(i, j, rng() & 1u);
        const auto ker = kernel_basis(m);
        CHECK(ker.size() + rank(m) == c);
        CHECK(image_basis(m).size() == rank(m));
        for (Vec v : ker) {
            CHECK(v != 0);
            CHECK(m.apply(v) == 0);
        }
    }
}

TEST_CASE("matrix code is the row-major bit string")
{
    const F2Matrix m = M({{1, 0, 1}, {0, 1, 1}});
    CHECK(m.code() == 0b101011u);
    CHECK(F2Matrix::from_code(2, 3, m.code()) == m);
    CHECK(M({{0, 1}}) < M({{1, 0}}));
}

TEST_CASE("composition rejects mismatched dimensions")
{
    CHECK_THROWS_AS(F2Matrix::identity(2) * F2Matrix::identity(3), DimMismatch);
}

TEST_CASE("inverse and solve")
{
    const auto inv = inverse(kB2);
    REQUIRE(inv);
    CHECK(*inv * kB2 == F2Matrix::identity(2));
    CHECK_FALSE(inverse(M({{1, 1}, {1, 1}})));
    // pi: V3 -> V2 and psi = iota_x
    const F2Matrix pi = M({{1, 0, 0}, {0, 1, 0}});
    const auto lift = solve(pi, M({{1}, {0}}));
    REQUIRE(lift);
    CHECK(pi * *lift == M({{1}, {0}}));
    CHECK_FALSE(solve(M({{0}, {1}}), M({{1}, {0}})));
}

TEST_CASE("enumerate_maps counts and order")
{
    CHECK(enumerate_maps(1, 2).size() == 4);
    CHECK(enumerate_maps(1, 3).size() == 8);
    const auto empty = enumerate_maps(0, 3);
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].rows() == 3);
    CHECK(empty[0].cols() == 0);
    const auto maps = enumerate_maps(2, 2);
    CHECK(std::is_sorted(maps.begin(), maps.end()));
    Limits tight;
    tight.hom_bits = 4;
    CHECK_THROWS_AS(enumerate_maps(3, 2, tight), CapExceeded);
}

TEST_CASE("group closure")
{
    const std::vector<F2Matrix> b2{kB2};
    const Subgroup g = group_closure(2, b2);
    CHECK(g.order() == 2);
    CHECK(group_closure(2, std::vector<F2Matrix>{}).order() == 1);

    // GL(2, F2) by brute force determinant
    std::size_t invertible = 0;
    for (const auto& m : enumerate_maps(2, 2))
        invertible += det2(m);
    const std::vector<F2Matrix> gens{kB2, kSwap};
    CHECK(group_closure(2, gens).order() == invertible);
    CHECK(invertible == 6);

    CHECK_THROWS_AS(group_closure(2, std::vector<F2Matrix>{M({{1, 1}, {1, 1}})}), NotInvertible);
    Limits tight;
    tight.group_order = 3;
    CHECK_THROWS_AS(group_closure(2, gens, tight), CapExceeded);
}

TEST_CASE("closure is closed under products and inverses")
{
    for (const auto& g : all_subgroups(2)) {
        for (const auto& a : g.elements) {
            CHECK(g.contains(*inverse(a)));
            for (const auto& b : g.elements)
                CHECK(g.contains(a * b));
        }
    }
}

TEST_CASE("GL(2,F2) has six subgroups")
{
    const auto subs = all_subgroups(2);
    CHECK(subs.size() == 6);
    std::vector<std::size_t> orders;
    for (const auto& s : subs)
        orders.push_back(s.order());
    CHECK(orders == std::vector<std::size_t>{1, 2, 2, 2, 3, 6});
}

TEST_CASE("orbits of B2 on maps F2 -> V2")
{
    const Subgroup g = group_closure(2, std::vector<F2Matrix>{kB2});
    const auto orbs = orbits(g, 1);
    REQUIRE(orbs.size() == 3);
    const F2Matrix zero = M({{0}, {0}}), x = M({{1}, {0}}), y = M({{0}, {1}}), xy = M({{1}, {1}});
    CHECK(orbs[0].members == std::vector<F2Matrix>{zero});
    CHECK(orbs[1].members == std::vector<F2Matrix>{y, xy});
    CHECK(orbs[2].members == std::vector<F2Matrix>{x});
    // y ~ x + y, and nothing else moves
    CHECK(orbit_of(g, xy).members == std::vector<F2Matrix>{y, xy});
    CHECK(orbit_of(g, x).members.size() == 1);
}

TEST_CASE("orbits of the trivial group and of GL(2)")
{
    CHECK(orbits(trivial_group(2), 1).size() == 4);
    const std::vector<F2Matrix> gens{kB2, kSwap};
    const auto orbs = orbits(group_closure(2, gens), 1);
    REQUIRE(orbs.size() == 2);
    CHECK(orbs[0].members.size() == 1);
    CHECK(orbs[1].members.size() == 3);
}

TEST_CASE("orbit sizes partition the Hom-set and divide |G|")
{
    for (const auto& g : all_subgroups(2)) {
        for (std::size_t w = 0; w <= 3; ++w) {
            const auto orbs = orbits(g, w);
            std::size_t total = 0;
            for (const auto& o : orbs) {
                total += o.members.size();
                CHECK(g.order() % o.members.size() == 0);
                CHECK(o.representative == o.members.front());
            }
            CHECK(total == (std::size_t{1} << (2 * w)));
            CHECK(orbs == orbits_serial(g, w));
        }
    }
}

TEST_CASE("fixed space")
{
    const Subgroup b2 = group_closure(2, std::vector<F2Matrix>{kB2});
    const auto fb = fixed_space(b2);
    CHECK(fb.size() == 1);
    CHECK(span_of(fb) == brute_fixed(b2));
    CHECK(span_of(fb) == std::set<Vec>{0, 1});  // span{x}
    CHECK(fixed_space(trivial_group(3)).size() == 3);
    const std::vector<F2Matrix> gens{kB2, kSwap};
    CHECK(fixed_space(group_closure(2, gens)).empty());
}

TEST_CASE("fixed space equals the singleton orbits of column maps")
{
    for (const auto& g : all_subgroups(2)) {
        std::set<Vec> singletons;
        for (const auto& o : orbits(g, 1))
            if (o.members.size() == 1)
                singletons.insert(o.representative.column(0));
        CHECK(span_of(fixed_space(g)) == singletons);
        CHECK(singletons == brute_fixed(g));
    }
}

TEST_CASE("vector names")
{
    CHECK(format_vector(0b011, 3) == "x+y");
    CHECK(format_vector(0, 2) == "0");
    CHECK(format_vector(0b1000, 4) == "e4");
}
