#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "helix/decomp.hpp"
#include "helix/ingest.hpp"

namespace helix {

struct TurnoverLaw {
    enum class Kind : std::uint8_t { Uniform, LogNormal };
    Kind kind = Kind::LogNormal;
    // Uniform: [a, b). LogNormal: mu = a, sigma = b (of the natural log).
    double a = 16.0;
    double b = 1.5;

    static TurnoverLaw uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
    static TurnoverLaw lognormal(double mu, double sigma) { return {Kind::LogNormal, mu, sigma}; }
};

/// Synthetic population parameters.
///
/// Each firm draws a municipality uniformly. With probability `coupling` its
/// size class and technology group are then fixed by the municipality
/// (o = g mod n_size_classes, t = o mod n_tech_groups); otherwise both are
/// drawn uniformly and independently. Turnover follows `turnover_law`.
///
/// Ownership does not consume the attribute stream: a separate permutation,
/// seeded from the same seed, ranks the firms and the first
/// round_half_up(n_firms * foreign_share_target) of them are Foreign. The
/// same seed with a larger share therefore only turns more firms foreign.
struct SynthParams {
    std::uint32_t n_firms = 500;
    std::uint32_t n_municipalities = 20;
    std::uint32_t n_size_classes = 8;   // at most 8
    std::uint32_t n_tech_groups = 10;   // at most 10
    double coupling = 0.5;
    double foreign_share_target = 0.1;
    TurnoverLaw turnover_law;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

std::uint64_t foreign_count_for(std::uint32_t n_firms, double share);

std::vector<ClassifiedFirm> generate(const SynthParams& params);

struct SweepPoint {
    double share = 0;
    std::optional<double> r_ratio;
    std::optional<double> t_ratio;
    RegionReport report;
};

struct SweepCurve {
    std::vector<SweepPoint> points;
    std::size_t t_ratio_violations = 0;  // decreases between consecutive defined points
    std::size_t r_ratio_violations = 0;
};

/// `shares` must be strictly increasing within [0, 1]. Points are computed
/// concurrently and stored in share order.
SweepCurve sweep_foreign_share(const SynthParams& params, std::span<const double> shares);

/// Columns share,r_ratio,t_ratio; undefined values are written as NA.
void write_sweep_csv(std::ostream& out, const SweepCurve& curve);

}  // namespace helix
