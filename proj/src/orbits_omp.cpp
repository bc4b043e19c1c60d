// OpenMP orbit partition. orbits_serial() in f2.cpp is the reference.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "nilc/errors.hpp"
#include "nilc/f2.hpp"

namespace nilc {

std::vector<Orbit> orbits(const Subgroup& g, std::size_t dim_source, const Limits& limits)
{
    const std::size_t u = g.ambient_dim;
    const std::size_t bits = dim_source * u;
    check_hom_bits(bits, limits);
    const auto count = static_cast<std::int64_t>(std::uint64_t{1} << bits);

    // canon[c] = smallest code in the orbit of c
    std::vector<std::uint64_t> canon(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < count; ++c) {
        const F2Matrix psi = F2Matrix::from_code(u, dim_source, static_cast<std::uint64_t>(c));
        std::uint64_t best = static_cast<std::uint64_t>(c);
        for (const auto& h : g.elements)
            best = std::min(best, (h * psi).code());
        canon[static_cast<std::size_t>(c)] = best;
    }

    // canon[c] <= c, so a representative is always seen before the rest of its orbit
    std::vector<Orbit> out;
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::int64_t c = 0; c < count; ++c) {
        const auto code = static_cast<std::uint64_t>(c);
        const std::uint64_t rep = canon[static_cast<std::size_t>(c)];
        const F2Matrix m = F2Matrix::from_code(u, dim_source, code);
        if (rep == code) {
            index.emplace(rep, out.size());
            out.push_back(Orbit{dim_source, m, {m}});
        } else {
            out[index.at(rep)].members.push_back(m);
        }
    }
    return out;
}

}  // namespace nilc
