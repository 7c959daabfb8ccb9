#pragma once

// Rank statistics for tied (count) data: Kendall's tau in both its
// pair-count and integral forms, Spearman's rho (bivariate and the
// multivariate extension), Pearson chi-squared, the likelihood-ratio
// statistic, and the Cramer-von Mises functional of the empirical
// checkerboard copula.

#include <cstddef>
#include <vector>

#include "cbcop/empirical.hpp"

namespace cbcop {

class ContingencyTable {
public:
    // counts row-major K x L, non-negative, total >= 1.
    ContingencyTable(std::size_t rows, std::size_t cols, std::vector<long long> counts);

    static ContingencyTable from_sample(const RankedSample& s); // d = 2 only

    // Expand back to a sample with multiplicities (row value = row index,
    // column value = column index).
    RankedSample to_sample() const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    long long count(std::size_t k, std::size_t l) const { return counts_[k * cols_ + l]; }
    long long total() const { return total_; }
    long long row_total(std::size_t k) const { return row_totals_[k]; }
    long long col_total(std::size_t l) const { return col_totals_[l]; }

private:
    std::size_t rows_, cols_;
    std::vector<long long> counts_, row_totals_, col_totals_;
    long long total_;
};

// Pair-count Kendall tau with tie correction: (strictly concordant -
// strictly discordant) / (n choose 2).  O(n log n).
double kendall_tau(const RankedSample& s);

// The same value through the checkerboard integral identity
// n/(n-1) * (4 int C dC - 1), cell-wise exact integration.
double kendall_tau_integral(const RankedSample& s);

// Mid-rank moment formula (12/n^3) sum (R_i1 - (n+1)/2)(R_i2 - (n+1)/2).
double spearman_rho(const RankedSample& s);

// Multivariate version: scale * [-2^-d + mean_i prod_j ((2n+1)/(2n) - R_ij/n)]
// with scale = 2^d (d+1) / (2^d - d - 1); reduces to spearman_rho at d = 2.
double spearman_rho_multivariate(const RankedSample& s);

// Pearson chi-squared: n sum (f_kl - f_k f_l)^2 / (f_k f_l).
double chi_squared(const ContingencyTable& t);

// Likelihood-ratio statistic: 2n sum f_kl ln(f_kl / (f_k f_l)), 0 ln 0 = 0.
double g_squared(const ContingencyTable& t);

// Cramer-von Mises statistic S_n = n int (C_n - Pi)^2 over the unit cube,
// via the closed-form hat-function expansion; any d >= 2.
double cvm_statistic(const RankedSample& s);

} // namespace cbcop
