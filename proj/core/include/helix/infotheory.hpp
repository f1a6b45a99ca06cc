#pragma once

#include <cstdint>
#include <span>

#include "helix/cube.hpp"

namespace helix {

/// Logarithm base for all entropy values. Bits are the default and the unit
/// every reported synergy figure uses.
enum class LogBase : std::uint8_t { Two, E, Ten };

/// log(x) in the requested base.
double log_in(LogBase base, double x);

/// Plug-in Shannon entropy -sum (c/total) log(c/total) over cells with c > 0.
/// The counts may sum to less than `total`; that is how the split terms of the
/// decomposition are evaluated. Throws ZeroTotal when total == 0.
double shannon_entropy(std::span<const std::uint64_t> counts, std::uint64_t total, LogBase base = LogBase::Two);

/// Joint and marginal entropies over the combined (domestic + foreign) counts.
struct EntropyProfile {
    double h_g = 0, h_o = 0, h_t = 0;
    double h_go = 0, h_gt = 0, h_ot = 0;
    double h_got = 0;

    double at(Dims dims) const;
};

/// Interaction information among G, O and T. Negative values indicate synergy.
struct SignedInformation {
    double t_got = 0;
};

EntropyProfile entropy_profile(const ContingencyCube& cube, LogBase base = LogBase::Two);

/// H_G + H_O + H_T - H_GO - H_GT - H_OT + H_GOT
SignedInformation ternary_information(const EntropyProfile& profile);

/// Alternating sum over any seven values indexed like kAllDims.
double alternating_sum(const std::array<double, 7>& terms);

}  // namespace helix
