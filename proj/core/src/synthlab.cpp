#include "helix/synthlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace helix {
namespace {

// std::mt19937_64 output is fully specified by the standard; the library
// distributions are not, so values are derived from raw draws here.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n) by rejection.
    std::uint32_t below(std::uint32_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::uint32_t>(x % n);
    }

    double standard_normal() {
        // Box-Muller, one value per call.
        const double u1 = 1.0 - unit();  // (0, 1]
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kOwnershipSalt = 0x6F776E6572736870ULL;

std::string municipality_label(std::uint32_t g) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "M%03u", g + 1);
    return buf;
}

std::string format_number(const std::optional<double>& v) {
    if (!v) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
}

}  // namespace

void SynthParams::validate() const {
    if (n_firms == 0 || n_municipalities == 0 || n_size_classes == 0 || n_tech_groups == 0)
        throw std::invalid_argument("synthetic population sizes must be positive");
    if (n_size_classes > 8) throw std::invalid_argument("at most 8 size classes");
    if (n_tech_groups > static_cast<std::uint32_t>(kTechGroupCount))
        throw std::invalid_argument("at most 10 technology groups");
    if (!(coupling >= 0.0 && coupling <= 1.0)) throw std::invalid_argument("coupling must lie in [0, 1]");
    if (!(foreign_share_target >= 0.0 && foreign_share_target <= 1.0))
        throw std::invalid_argument("foreign share must lie in [0, 1]");
    if (turnover_law.kind == TurnoverLaw::Kind::Uniform) {
        if (!(turnover_law.a >= 0.0 && turnover_law.b > turnover_law.a))
            throw std::invalid_argument("uniform turnover needs 0 <= lo < hi");
    } else if (!(turnover_law.b >= 0.0) || !std::isfinite(turnover_law.a)) {
        throw std::invalid_argument("lognormal turnover needs finite mu and sigma >= 0");
    }
}

std::uint64_t foreign_count_for(std::uint32_t n_firms, double share) {
    const auto k = static_cast<std::uint64_t>(std::floor(static_cast<double>(n_firms) * share + 0.5));
    return std::min<std::uint64_t>(k, n_firms);
}

std::vector<ClassifiedFirm> generate(const SynthParams& params) {
    params.validate();
    Stream attrs(splitmix64(params.seed));

    std::vector<ClassifiedFirm> firms(params.n_firms);
    for (auto& f : firms) {
        const std::uint32_t g = attrs.below(params.n_municipalities);
        std::uint32_t o, t;
        if (attrs.unit() < params.coupling) {
            o = g % params.n_size_classes;
            t = o % params.n_tech_groups;
        } else {
            o = attrs.below(params.n_size_classes);
            t = attrs.below(params.n_tech_groups);
        }
        const auto& law = params.turnover_law;
        const double turnover = law.kind == TurnoverLaw::Kind::Uniform
                                    ? law.a + (law.b - law.a) * attrs.unit()
                                    : std::exp(law.a + law.b * attrs.standard_normal());

        f.g = municipality_label(g);
        f.o = SizeClass{static_cast<std::uint8_t>(o)};
        f.t = TechGroup{static_cast<std::uint8_t>(t + 1)};
        f.turnover = turnover;
        f.ownership = Ownership::Domestic;
    }

    // Fisher-Yates over firm indices; the prefix of the permutation is foreign.
    std::vector<std::uint32_t> order(params.n_firms);
    for (std::uint32_t i = 0; i < params.n_firms; ++i) order[i] = i;
    Stream owner(splitmix64(params.seed ^ kOwnershipSalt));
    for (std::uint32_t i = params.n_firms; i > 1; --i) std::swap(order[i - 1], order[owner.below(i)]);

    const auto k = foreign_count_for(params.n_firms, params.foreign_share_target);
    for (std::uint64_t i = 0; i < k; ++i) firms[order[i]].ownership = Ownership::Foreign;
    return firms;
}

SweepCurve sweep_foreign_share(const SynthParams& params, std::span<const double> shares) {
    for (std::size_t i = 0; i < shares.size(); ++i) {
        if (!(shares[i] >= 0.0 && shares[i] <= 1.0)) throw std::invalid_argument("shares must lie in [0, 1]");
        if (i > 0 && !(shares[i] > shares[i - 1])) throw std::invalid_argument("shares must be strictly increasing");
    }
    params.validate();

    auto run_point = [&params](double share) {
        SynthParams p = params;
        p.foreign_share_target = share;
        const auto firms = generate(p);
        SweepPoint pt;
        pt.share = share;
        pt.report = region_report(firms);
        pt.r_ratio = pt.report.r_ratio;
        pt.t_ratio = pt.report.t_ratio;
        return pt;
    };

    SweepCurve curve;
    curve.points.resize(shares.size());
    const std::size_t batch = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < shares.size(); start += batch) {
        const std::size_t end = std::min(shares.size(), start + batch);
        std::vector<std::future<SweepPoint>> pending;
        for (std::size_t i = start; i < end; ++i) pending.push_back(std::async(std::launch::async, run_point, shares[i]));
        for (std::size_t i = start; i < end; ++i) curve.points[i] = pending[i - start].get();
    }

    auto count_decreases = [&](auto field) {
        std::size_t violations = 0;
        std::optional<double> prev;
        for (const auto& pt : curve.points) {
            const auto v = field(pt);
            if (!v) continue;
            if (prev && *v < *prev) ++violations;
            prev = v;
        }
        return violations;
    };
    curve.t_ratio_violations = count_decreases([](const SweepPoint& p) { return p.t_ratio; });
    curve.r_ratio_violations = count_decreases([](const SweepPoint& p) { return p.r_ratio; });
    return curve;
}

void write_sweep_csv(std::ostream& out, const SweepCurve& curve) {
    out << "share,r_ratio,t_ratio\n";
    for (const auto& pt : curve.points)
        out << format_number(pt.share) << ',' << format_number(pt.r_ratio) << ',' << format_number(pt.t_ratio) << '\n';
}

}  // namespace helix
