#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "helix/synthlab.hpp"

using namespace helix;

namespace {

SynthParams params(double coupling, std::uint64_t seed, std::uint32_t n = 500) {
    SynthParams p;
    p.n_firms = n;
    p.n_municipalities = 12;
    p.n_size_classes = 4;
    p.n_tech_groups = 3;
    p.coupling = coupling;
    p.seed = seed;
    return p;
}

double t_got_of(const SynthParams& p) { return region_report(generate(p)).decomposition.t_got; }

}  // namespace

TEST_CASE("generate is deterministic and honours the foreign count") {
    auto p = params(0.5, 17);
    p.foreign_share_target = 0.0;
    const auto a = generate(p);
    CHECK(a.size() == 500);
    CHECK(std::none_of(a.begin(), a.end(), [](const auto& f) { return f.ownership == Ownership::Foreign; }));
    CHECK(generate(p) == a);

    p.foreign_share_target = 0.3;
    const auto b = generate(p);
    CHECK(std::count_if(b.begin(), b.end(), [](const auto& f) { return f.ownership == Ownership::Foreign; }) == 150);
    // Same attributes; only ownership changed.
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].g == b[i].g);
        CHECK(a[i].turnover == b[i].turnover);
    }

    p.seed = 18;
    CHECK_FALSE(generate(p) == b);
}

TEST_CASE("foreign count rounds half up") {
    CHECK(foreign_count_for(10, 0.25) == 3);
    CHECK(foreign_count_for(10, 0.24) == 2);
    CHECK(foreign_count_for(7, 1.0) == 7);
    CHECK(foreign_count_for(7, 0.0) == 0);
}

TEST_CASE("uniform turnover law stays within bounds") {
    auto p = params(0.0, 3, 200);
    p.turnover_law = TurnoverLaw::uniform(10.0, 20.0);
    for (const auto& f : generate(p)) {
        CHECK(f.turnover >= 10.0);
        CHECK(f.turnover < 20.0);
    }
}

TEST_CASE("parameter validation") {
    auto p = params(0.5, 1);
    p.n_size_classes = 9;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
    p = params(1.5, 1);
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
    p = params(0.5, 1, 0);
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
}

TEST_CASE("coupling drives ternary information away from zero") {
    // Noise band for independent draws, measured over 100 seeds at n = 2000.
    std::vector<double> free;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) free.push_back(t_got_of(params(0.0, seed, 2000)));
    const double mean = std::accumulate(free.begin(), free.end(), 0.0) / free.size();
    double var = 0;
    for (double v : free) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / (free.size() - 1));
    const double band = std::abs(mean) + 4 * sd;
    MESSAGE("independent t_got: mean " << mean << ", sd " << sd);
    CHECK(band < 0.05);

    // Fully coupled: o and t are functions of g, so t_got = I(O;T) = H(T) > 0.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) CHECK(t_got_of(params(1.0, seed, 2000)) > 10 * band);
}

TEST_CASE("sweep endpoints are exact") {
    const auto p = params(0.8, 5);
    const std::vector<double> shares{0.0, 0.1, 0.25, 0.5, 0.75, 1.0};
    const auto curve = sweep_foreign_share(p, shares);
    REQUIRE(curve.points.size() == shares.size());
    REQUIRE(curve.points.front().report.decomposition.t_got != 0.0);
    CHECK(*curve.points.front().r_ratio == 0.0);
    CHECK(*curve.points.front().t_ratio == 0.0);
    CHECK(*curve.points.back().r_ratio == 1.0);
    CHECK(*curve.points.back().t_ratio == 1.0);
    for (std::size_t i = 0; i < shares.size(); ++i) CHECK(curve.points[i].share == shares[i]);
}

TEST_CASE("sweep output is reproducible and reports violations") {
    const auto p = params(0.3, 9);
    std::vector<double> shares;
    for (int i = 0; i <= 20; ++i) shares.push_back(i / 20.0);
    std::ostringstream a, b;
    const auto c1 = sweep_foreign_share(p, shares);
    write_sweep_csv(a, c1);
    write_sweep_csv(b, sweep_foreign_share(p, shares));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("share,r_ratio,t_ratio\n0,0,0\n", 0) == 0);
    MESSAGE("t_ratio violations: " << c1.t_ratio_violations << ", r_ratio violations: " << c1.r_ratio_violations);
    // Nested foreign sets make r_ratio non-decreasing.
    CHECK(c1.r_ratio_violations == 0);
}

TEST_CASE("sweep rejects bad share lists") {
    const auto p = params(0.3, 9, 50);
    CHECK_THROWS_AS(sweep_foreign_share(p, std::vector<double>{0.5, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(sweep_foreign_share(p, std::vector<double>{0.2, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(sweep_foreign_share(p, std::vector<double>{1.2}), std::invalid_argument);
}
