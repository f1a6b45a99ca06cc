#include "helix/decomp.hpp"

#include <vector>

#include "helix/error.hpp"

namespace helix {
namespace {

std::vector<OwnershipCounts> cell_list(const MarginalCounts& m) {
    std::vector<OwnershipCounts> out;
    out.reserve(m.counts.size());
    for (const auto& [key, c] : m.counts) out.push_back(c);
    return out;
}

}  // namespace

SplitEntropyTerm split_entropy(std::span<const OwnershipCounts> cells, std::uint64_t total, LogBase base) {
    if (total == 0) throw ZeroTotal();
    std::vector<std::uint64_t> nat, intl, combined;
    nat.reserve(cells.size());
    intl.reserve(cells.size());
    combined.reserve(cells.size());
    for (const auto& c : cells) {
        nat.push_back(c.nat);
        intl.push_back(c.intl);
        combined.push_back(c.total());
    }
    SplitEntropyTerm term;
    term.h_total = shannon_entropy(combined, total, base);
    term.h_nat = shannon_entropy(nat, total, base);
    term.h_int = shannon_entropy(intl, total, base);
    term.h_tilde = term.h_total - term.h_nat - term.h_int;
    return term;
}

SplitEntropyTerm split_entropy(const MarginalCounts& marginal, std::uint64_t total, LogBase base) {
    const auto cells = cell_list(marginal);
    return split_entropy(cells, total, base);
}

double literal_interaction_entropy(std::span<const OwnershipCounts> cells, std::uint64_t total, LogBase base) {
    if (total == 0) throw ZeroTotal();
    const double n = static_cast<double>(total);
    double h = 0.0;
    for (const auto& c : cells) {
        if (c.nat == 0 || c.intl == 0) continue;
        const double nat = static_cast<double>(c.nat);
        const double intl = static_cast<double>(c.intl);
        h -= nat / n * log_in(base, 1.0 + intl / nat);
        h -= intl / n * log_in(base, 1.0 + nat / intl);
    }
    return h;
}

SynergyDecomposition decompose(const ContingencyCube& cube, LogBase base) {
    SynergyDecomposition d;
    std::array<double, 7> total{}, nat{}, intl{}, tilde{};
    for (std::size_t i = 0; i < kAllDims.size(); ++i) {
        d.terms[i] = split_entropy(marginalize(cube, kAllDims[i]), cube.total(), base);
        total[i] = d.terms[i].h_total;
        nat[i] = d.terms[i].h_nat;
        intl[i] = d.terms[i].h_int;
        tilde[i] = d.terms[i].h_tilde;
    }
    d.t_got = alternating_sum(total);
    d.t_nat = alternating_sum(nat);
    d.t_int_pure = alternating_sum(intl);
    d.t_tilde = alternating_sum(tilde);
    d.t_int = d.t_int_pure + d.t_tilde;
    return d;
}

std::optional<double> subsample_synergy(const ContingencyCube& cube, Ownership group, LogBase base) {
    const bool foreign = group == Ownership::Foreign;
    const std::uint64_t n = foreign ? cube.total_int() : cube.total_nat();
    if (n == 0) return std::nullopt;

    std::array<double, 7> h{};
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 0; i < kAllDims.size(); ++i) {
        counts.clear();
        for (const auto& [key, c] : marginalize(cube, kAllDims[i]).counts) counts.push_back(foreign ? c.intl : c.nat);
        h[i] = shannon_entropy(counts, n, base);
    }
    return alternating_sum(h);
}

SynergyRatios synergy_ratios(double t_got, double t_int, std::optional<double> r_ratio) {
    SynergyRatios out;
    // + 0.0 folds a -0.0 quotient (t_int == 0, t_got < 0) into 0.0.
    if (t_got != 0.0) out.t_ratio = t_int / t_got + 0.0;
    if (r_ratio && out.t_ratio && *out.t_ratio != 0.0) out.efficiency = *r_ratio / *out.t_ratio;
    return out;
}

RegionReport region_report(std::span<const ClassifiedFirm> firms, const ClassificationConfig& config,
                           LogBase base) {
    if (firms.empty()) throw EmptyDataset();
    const auto cube = build_cube(firms, config);

    RegionReport r;
    r.profile = entropy_profile(cube, base);
    r.decomposition = decompose(cube, base);
    r.t_nat_subsample = subsample_synergy(cube, Ownership::Domestic, base);
    r.t_int_subsample = subsample_synergy(cube, Ownership::Foreign, base);

    // r_total and r_int accumulate in the same order so that an all-foreign
    // population gives r_int == r_total bit for bit.
    for (const auto& f : firms) {
        r.r_total += f.turnover;
        if (f.ownership == Ownership::Foreign) {
            r.r_int += f.turnover;
            ++r.foreign_count;
        } else {
            r.r_nat += f.turnover;
        }
    }
    r.firm_count = firms.size();
    if (r.r_total > 0.0) r.r_ratio = r.r_int / r.r_total;
    if (r.r_nat > 0.0) r.r_int_over_r_nat = r.r_int / r.r_nat;

    const auto ratios = synergy_ratios(r.decomposition.t_got, r.decomposition.t_int, r.r_ratio);
    r.t_ratio = ratios.t_ratio;
    r.efficiency = ratios.efficiency;
    return r;
}

}  // namespace helix
