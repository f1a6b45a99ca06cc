#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace helix {

struct ChiSquareResult {
    double statistic = 0;
    int dof = 0;
    double p_value = 1;
};

/// Two rows (e.g. domestic / foreign) by k columns of counts.
struct TwoRowTable {
    std::vector<std::array<std::uint64_t, 2>> columns;  // columns[j] = {row0, row1}
};

/// Pearson chi-square test of homogeneity for a 2 x k table, no continuity
/// correction. Throws DegenerateTable when k < 2 or any row or column margin
/// is zero.
ChiSquareResult chi_square_homogeneity(const TwoRowTable& table);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series for x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_q(double a, double x);

/// Upper tail P(X >= statistic) of a chi-square distribution.
double chi_square_upper_tail(double statistic, int dof);

}  // namespace helix
