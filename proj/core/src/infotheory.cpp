#include "helix/infotheory.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "helix/error.hpp"

namespace helix {

double log_in(LogBase base, double x) {
    switch (base) {
        case LogBase::Two: return std::log2(x);
        case LogBase::E: return std::log(x);
        case LogBase::Ten: return std::log10(x);
    }
    throw std::invalid_argument("unknown log base");
}

double shannon_entropy(std::span<const std::uint64_t> counts, std::uint64_t total, LogBase base) {
    if (total == 0) throw ZeroTotal();
    const double n = static_cast<double>(total);
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * log_in(base, p);
    }
    // A single cell holding every firm gives -1*log(1) = -0.0.
    return h == 0.0 ? 0.0 : h;
}

double EntropyProfile::at(Dims dims) const {
    switch (dims.mask()) {
        case Dims::kG: return h_g;
        case Dims::kO: return h_o;
        case Dims::kT: return h_t;
        case Dims::kG | Dims::kO: return h_go;
        case Dims::kG | Dims::kT: return h_gt;
        case Dims::kO | Dims::kT: return h_ot;
        case Dims::kG | Dims::kO | Dims::kT: return h_got;
    }
    throw std::invalid_argument("invalid dimension subset");
}

EntropyProfile entropy_profile(const ContingencyCube& cube, LogBase base) {
    std::array<double, 7> h{};
    std::vector<std::uint64_t> combined;
    for (std::size_t i = 0; i < kAllDims.size(); ++i) {
        const auto marginal = marginalize(cube, kAllDims[i]);
        combined.clear();
        for (const auto& [key, c] : marginal.counts) combined.push_back(c.total());
        h[i] = shannon_entropy(combined, cube.total(), base);
    }
    return EntropyProfile{h[0], h[1], h[2], h[3], h[4], h[5], h[6]};
}

double alternating_sum(const std::array<double, 7>& t) {
    return t[0] + t[1] + t[2] - t[3] - t[4] - t[5] + t[6];
}

SignedInformation ternary_information(const EntropyProfile& p) {
    return SignedInformation{alternating_sum({p.h_g, p.h_o, p.h_t, p.h_go, p.h_gt, p.h_ot, p.h_got})};
}

}  // namespace helix
