#pragma once

#include <random>
#include <string>

#include "helix/cube.hpp"

namespace helix::testing {

inline std::vector<std::string> labels(std::size_t n, char prefix) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, prefix) + std::to_string(i));
    return out;
}

struct CubeShape {
    std::uint32_t max_axis = 4;
    std::uint32_t max_n = 200;
    bool split = true;  // draw an ownership for every firm
};

/// Random cube with axes of 1..max_axis categories and 1..max_n firms. Cell
/// occupancy is skewed so that some cubes are sparse and some dense; the
/// foreign probability per cube is itself random.
inline ContingencyCube random_cube(std::mt19937_64& rng, CubeShape shape = {}) {
    std::uniform_int_distribution<std::uint32_t> axis(1, shape.max_axis);
    const auto ng = axis(rng), no = axis(rng), nt = axis(rng);
    const auto n = std::uniform_int_distribution<std::uint32_t>(1, shape.max_n)(rng);
    const double foreign_p = shape.split ? std::uniform_real_distribution<double>(0.0, 1.0)(rng) : 0.0;

    // Occupied cell subset, then firms dropped into it.
    std::vector<CellKey> support;
    std::bernoulli_distribution keep(std::uniform_real_distribution<double>(0.15, 1.0)(rng));
    for (std::uint32_t g = 0; g < ng; ++g)
        for (std::uint32_t o = 0; o < no; ++o)
            for (std::uint32_t t = 0; t < nt; ++t)
                if (keep(rng)) support.push_back({g, o, t});
    if (support.empty()) support.push_back({0, 0, 0});

    std::uniform_int_distribution<std::size_t> pick(0, support.size() - 1);
    std::bernoulli_distribution foreign(foreign_p);
    CellMap cells;
    for (std::uint32_t i = 0; i < n; ++i) {
        auto& c = cells[support[pick(rng)]];
        (foreign(rng) ? c.intl : c.nat) += 1;
    }
    return ContingencyCube(CubeAxes{labels(ng, 'g'), labels(no, 'o'), labels(nt, 't')}, std::move(cells));
}

/// Cube from a list of (g, o, t, nat, int) tuples over binary axes.
inline ContingencyCube binary_cube(std::initializer_list<std::tuple<int, int, int, int, int>> cells) {
    CellMap map;
    for (const auto& [g, o, t, nat, intl] : cells)
        map[CellKey{std::uint32_t(g), std::uint32_t(o), std::uint32_t(t)}] =
            OwnershipCounts{std::uint64_t(nat), std::uint64_t(intl)};
    return ContingencyCube(CubeAxes{{"g0", "g1"}, {"o0", "o1"}, {"t0", "t1"}}, std::move(map));
}

inline ContingencyCube xor_cube() {
    return binary_cube({{0, 0, 0, 1, 0}, {0, 1, 1, 1, 0}, {1, 0, 1, 1, 0}, {1, 1, 0, 1, 0}});
}

inline ContingencyCube identical_triple_cube() { return binary_cube({{0, 0, 0, 1, 0}, {1, 1, 1, 1, 0}}); }

inline ContingencyCube product_uniform_cube() {
    return binary_cube({{0, 0, 0, 1, 0}, {0, 0, 1, 1, 0}, {0, 1, 0, 1, 0}, {0, 1, 1, 1, 0},
                        {1, 0, 0, 1, 0}, {1, 0, 1, 1, 0}, {1, 1, 0, 1, 0}, {1, 1, 1, 1, 0}});
}

/// Even-parity cells domestic, odd-parity cells foreign, one firm each.
inline ContingencyCube mixed_parity_cube() {
    return binary_cube({{0, 0, 0, 1, 0}, {0, 1, 1, 1, 0}, {1, 0, 1, 1, 0}, {1, 1, 0, 1, 0},
                        {0, 0, 1, 0, 1}, {0, 1, 0, 0, 1}, {1, 0, 0, 0, 1}, {1, 1, 1, 0, 1}});
}

}  // namespace helix::testing
