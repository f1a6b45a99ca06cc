#include <doctest.h>

#include <random>

#include "helix/decomp.hpp"
#include "helix/error.hpp"
#include "support/oracles.hpp"
#include "support/random_cubes.hpp"

using namespace helix;

namespace {

constexpr double kTol = 1e-10;

ContingencyCube only(const ContingencyCube& cube, Ownership who) {
    CellMap cells;
    for (const auto& [k, c] : cube.cells())
        cells[k] = who == Ownership::Domestic ? OwnershipCounts{c.total(), 0} : OwnershipCounts{0, c.total()};
    return ContingencyCube(cube.axes(), cells);
}

ClassifiedFirm firm(std::string g, int o, int t, Ownership own, double turnover) {
    return ClassifiedFirm{std::move(g), SizeClass{std::uint8_t(o)}, TechGroup{std::uint8_t(t)}, own, turnover};
}

}  // namespace

TEST_CASE("split_entropy examples") {
    SUBCASE("no foreign firms") {
        const std::vector<OwnershipCounts> cells{{2, 0}, {2, 0}};
        const auto s = split_entropy(cells, 4);
        CHECK(s.h_nat == 1.0);
        CHECK(s.h_int == 0.0);
        CHECK(s.h_tilde == 0.0);
        CHECK(s.h_total == 1.0);
    }
    SUBCASE("one shared cell") {
        const std::vector<OwnershipCounts> cells{{1, 1}};
        const auto s = split_entropy(cells, 2);
        CHECK(s.h_total == 0.0);
        CHECK(s.h_nat == doctest::Approx(0.5));
        CHECK(s.h_int == doctest::Approx(0.5));
        CHECK(s.h_tilde == doctest::Approx(-1.0));
        CHECK(literal_interaction_entropy(cells, 2) == doctest::Approx(-1.0));
    }
    SUBCASE("disjoint supports") {
        const std::vector<OwnershipCounts> cells{{1, 0}, {1, 0}, {0, 1}, {0, 1}};
        const auto s = split_entropy(cells, 4);
        CHECK(s.h_total == doctest::Approx(2.0));
        CHECK(s.h_nat == doctest::Approx(1.0));
        CHECK(s.h_int == doctest::Approx(1.0));
        CHECK(std::abs(s.h_tilde) < 1e-15);
    }
    CHECK_THROWS_AS(split_entropy(std::vector<OwnershipCounts>{{1, 0}}, 0), ZeroTotal);
}

TEST_CASE("degenerate ownership is exact") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto cube = testing::random_cube(rng);
        const auto dom = decompose(only(cube, Ownership::Domestic));
        CHECK(dom.t_nat == dom.t_got);
        CHECK(dom.t_int == 0.0);
        CHECK(dom.t_int_pure == 0.0);
        CHECK(dom.t_tilde == 0.0);

        const auto fgn = decompose(only(cube, Ownership::Foreign));
        CHECK(fgn.t_int_pure == fgn.t_got);
        CHECK(fgn.t_nat == 0.0);
        CHECK(fgn.t_tilde == 0.0);
        CHECK(fgn.t_int == fgn.t_got);
    }
}

TEST_CASE("mixed parity cube splits into zero contributions") {
    // Frozen from an independent high-precision evaluation: every synergy
    // part of this cube is exactly zero.
    const auto d = decompose(testing::mixed_parity_cube());
    CHECK(std::abs(d.t_got) < 1e-12);
    CHECK(std::abs(d.t_nat) < 1e-12);
    CHECK(std::abs(d.t_int_pure) < 1e-12);
    CHECK(std::abs(d.t_tilde) < 1e-12);
    // Per-term: single marginals split 1 = 1 + 1 - 1, pairs 2 = 1.5 + 1.5 - 1.
    CHECK(d.terms[0].h_tilde == doctest::Approx(-1.0));
    CHECK(d.terms[3].h_nat == doctest::Approx(1.5));
    CHECK(d.terms[6].h_total == doctest::Approx(3.0));
}

TEST_CASE("decomposition identities and oracle agreement on random cubes") {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 300; ++i) {
        const auto cube = testing::random_cube(rng);
        const auto d = decompose(cube);
        CHECK(std::abs(d.t_int - (d.t_got - d.t_nat)) < kTol);
        CHECK(std::abs(d.t_int - (d.t_int_pure + d.t_tilde)) < kTol);
        CHECK(std::abs(d.t_got - (d.t_nat + d.t_int_pure + d.t_tilde)) < kTol);

        for (std::size_t k = 0; k < 7; ++k) {
            const auto& term = d.terms[k];
            CHECK(std::abs(term.h_total - (term.h_nat + term.h_int + term.h_tilde)) < kTol);
            CHECK(term.h_tilde <= kTol);
            std::vector<OwnershipCounts> cells;
            for (const auto& [key, c] : marginalize(cube, kAllDims[k]).counts) cells.push_back(c);
            CHECK(std::abs(term.h_tilde - literal_interaction_entropy(cells, cube.total())) < kTol);
        }

        const auto o = oracle::decomposition(cube);
        CHECK(std::abs(d.t_got - o.t_got) < kTol);
        CHECK(std::abs(d.t_nat - o.t_nat) < kTol);
        CHECK(std::abs(d.t_int_pure - o.t_int_pure) < kTol);
        CHECK(std::abs(d.t_tilde - o.t_tilde) < kTol);
    }
}

TEST_CASE("swapping ownership swaps the domestic and foreign parts") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        const auto cube = testing::random_cube(rng);
        const auto a = decompose(cube);
        const auto b = decompose(swap_ownership(cube));
        CHECK(b.t_nat == a.t_int_pure);
        CHECK(b.t_int_pure == a.t_nat);
        CHECK(b.t_got == a.t_got);
        CHECK(std::abs(b.t_tilde - a.t_tilde) < 1e-12);
    }
}

TEST_CASE("subsample synergy renormalizes within the group") {
    const auto cube = testing::binary_cube({{0, 0, 0, 1, 1}, {0, 1, 1, 1, 0}, {1, 0, 1, 1, 0}, {1, 1, 0, 1, 0}});
    const auto nat = subsample_synergy(cube, Ownership::Domestic);
    REQUIRE(nat);
    CHECK(*nat == doctest::Approx(-1.0));
    const auto fgn = subsample_synergy(cube, Ownership::Foreign);
    REQUIRE(fgn);
    CHECK(*fgn == 0.0);
    CHECK_FALSE(subsample_synergy(testing::xor_cube(), Ownership::Foreign).has_value());
}

TEST_CASE("synergy ratio arithmetic on injected aggregates") {
    const auto st = synergy_ratios(-0.204, -0.027, 0.09);
    REQUIRE(st.t_ratio);
    CHECK(*st.t_ratio == doctest::Approx(0.13235).epsilon(1e-4));
    REQUIRE(st.efficiency);
    CHECK(*st.efficiency == doctest::Approx(0.68).epsilon(0.01));

    const auto mr = synergy_ratios(-0.421, -0.24, 0.24);
    CHECK(*mr.t_ratio == doctest::Approx(0.5701).epsilon(1e-4));

    const auto zero = synergy_ratios(0.0, 0.0, 0.5);
    CHECK_FALSE(zero.t_ratio);
    CHECK_FALSE(zero.efficiency);

    const auto dom = synergy_ratios(-0.3, 0.0, 0.0);
    REQUIRE(dom.t_ratio);
    CHECK(*dom.t_ratio == 0.0);
    CHECK_FALSE(std::signbit(*dom.t_ratio));
    CHECK_FALSE(dom.efficiency);
}

TEST_CASE("region_report sums turnover and flags undefined ratios") {
    std::vector<ClassifiedFirm> firms{
        firm("a", 0, 1, Ownership::Domestic, 100), firm("a", 1, 2, Ownership::Domestic, 50),
        firm("b", 0, 2, Ownership::Domestic, 25),  firm("b", 1, 1, Ownership::Domestic, 25),
    };
    auto r = region_report(firms);
    CHECK(r.firm_count == 4);
    CHECK(r.foreign_count == 0);
    CHECK(r.r_total == 200);
    CHECK(r.r_int == 0);
    CHECK(*r.r_ratio == 0.0);
    CHECK(r.decomposition.t_int == 0.0);
    CHECK(r.decomposition.t_got == doctest::Approx(-1.0));
    CHECK(*r.t_ratio == 0.0);
    CHECK_FALSE(r.efficiency);
    CHECK_FALSE(r.t_int_subsample);

    for (auto& f : firms) f.ownership = Ownership::Foreign;
    r = region_report(firms);
    CHECK(*r.r_ratio == 1.0);
    CHECK(*r.t_ratio == 1.0);
    CHECK(*r.efficiency == 1.0);
    CHECK_FALSE(r.r_int_over_r_nat);

    CHECK_THROWS_AS(region_report(std::vector<ClassifiedFirm>{}), EmptyDataset);
}
