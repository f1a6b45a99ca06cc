#include "helix/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "helix/error.hpp"

namespace helix {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;

// P(a, x) by the power series; valid and fast for x < a + 1.
double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the continued fraction, modified Lentz; for x >= a + 1.
double upper_continued_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEpsilon;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || std::isnan(x)) throw std::domain_error("regularized_gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    return upper_continued_fraction(a, x);
}

double chi_square_upper_tail(double statistic, int dof) {
    if (dof < 1) throw std::domain_error("chi-square needs dof >= 1");
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquareResult chi_square_homogeneity(const TwoRowTable& table) {
    const auto k = table.columns.size();
    if (k < 2) throw DegenerateTable("chi-square needs at least two columns");

    std::array<double, 2> row{0.0, 0.0};
    for (const auto& col : table.columns) {
        if (col[0] + col[1] == 0) throw DegenerateTable("a column of the table is empty");
        row[0] += static_cast<double>(col[0]);
        row[1] += static_cast<double>(col[1]);
    }
    if (row[0] == 0.0 || row[1] == 0.0) throw DegenerateTable("a row of the table is empty");
    const double n = row[0] + row[1];

    double stat = 0.0;
    for (const auto& col : table.columns) {
        const double col_total = static_cast<double>(col[0] + col[1]);
        for (int r = 0; r < 2; ++r) {
            const double expected = row[r] * col_total / n;
            const double diff = static_cast<double>(col[r]) - expected;
            stat += diff * diff / expected;
        }
    }
    ChiSquareResult res;
    res.statistic = stat;
    res.dof = static_cast<int>(k) - 1;
    res.p_value = chi_square_upper_tail(stat, res.dof);
    return res;
}

}  // namespace helix
