#pragma once

#include <array>
#include <optional>
#include <span>

#include "helix/cube.hpp"
#include "helix/infotheory.hpp"

namespace helix {

/// One entropy term split into domestic, foreign and interaction parts, all
/// normalized by the full firm count N:
///
///   h_nat   = -sum (n_nat/N) log(n_nat/N)
///   h_int   = -sum (n_int/N) log(n_int/N)
///   h_tilde = h_total - h_nat - h_int
///
/// h_tilde is never positive: it equals
///   -sum (n_nat/N) log(1 + n_int/n_nat) - sum (n_int/N) log(1 + n_nat/n_int).
struct SplitEntropyTerm {
    double h_nat = 0;
    double h_int = 0;
    double h_tilde = 0;
    double h_total = 0;
};

SplitEntropyTerm split_entropy(std::span<const OwnershipCounts> cells, std::uint64_t total,
                               LogBase base = LogBase::Two);

SplitEntropyTerm split_entropy(const MarginalCounts& marginal, std::uint64_t total, LogBase base = LogBase::Two);

/// The interaction part evaluated summand by summand from the closed form
/// above. Summands whose log argument would divide by zero are 0.
double literal_interaction_entropy(std::span<const OwnershipCounts> cells, std::uint64_t total,
                                   LogBase base = LogBase::Two);

struct SynergyDecomposition {
    double t_got = 0;       // all firms
    double t_nat = 0;       // domestic part
    double t_int = 0;       // t_got - t_nat
    double t_int_pure = 0;  // foreign-only part
    double t_tilde = 0;     // domestic/foreign interaction part

    /// Split of H_G, H_O, H_T, H_GO, H_GT, H_OT, H_GOT (kAllDims order).
    std::array<SplitEntropyTerm, 7> terms{};
};

SynergyDecomposition decompose(const ContingencyCube& cube, LogBase base = LogBase::Two);

/// Ternary information of one ownership group computed on its own, i.e. with
/// the group size as the denominator. This is a different statistic from
/// t_nat / t_int_pure and does not add up to t_got. Empty when the group has
/// no firms.
std::optional<double> subsample_synergy(const ContingencyCube& cube, Ownership group, LogBase base = LogBase::Two);

struct SynergyRatios {
    std::optional<double> t_ratio;     // t_int / t_got; empty when t_got == 0
    std::optional<double> efficiency;  // r_ratio / t_ratio; empty when either is undefined or t_ratio == 0
};

/// Turnover-to-synergy arithmetic on already computed aggregates.
SynergyRatios synergy_ratios(double t_got, double t_int, std::optional<double> r_ratio);

struct RegionReport {
    EntropyProfile profile;
    SynergyDecomposition decomposition;
    std::optional<double> t_nat_subsample;
    std::optional<double> t_int_subsample;

    double r_total = 0;  // NOK, all firms
    double r_int = 0;    // NOK, foreign firms
    double r_nat = 0;    // NOK, domestic firms
    std::optional<double> r_ratio;              // r_int / r_total
    std::optional<double> r_int_over_r_nat;     // r_int / r_nat
    std::optional<double> t_ratio;
    std::optional<double> efficiency;

    std::size_t firm_count = 0;
    std::size_t foreign_count = 0;
};

/// Throws EmptyDataset on an empty list.
RegionReport region_report(std::span<const ClassifiedFirm> firms, const ClassificationConfig& config = {},
                           LogBase base = LogBase::Two);

}  // namespace helix
