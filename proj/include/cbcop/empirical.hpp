#pragma once

// Ranked samples and the empirical checkerboard copula.
//
// Observations enter as raw real values; only their within-column order
// matters.  rank() computes per-column categories (indices into the sorted
// distinct values) and mid-ranks (average rank over each tie block).  The
// empirical checkerboard copula is the multilinear copula of the empirical
// joint pmf; it also has a product form over per-observation "hat"
// functions, which is what the rank statistics integrate in closed form.

#include <cstddef>
#include <span>
#include <vector>

#include "cbcop/checkerboard.hpp"
#include "cbcop/margin.hpp"

namespace cbcop {

class RankedSample {
public:
    // data is row-major with n rows and d columns; all values finite,
    // n >= 1, d >= 2.
    static RankedSample rank(std::vector<double> data, std::size_t n, std::size_t d);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return d_; }

    double value(std::size_t i, std::size_t j) const { return data_[i * d_ + j]; }
    double midrank(std::size_t i, std::size_t j) const { return midrank_[i * d_ + j]; }
    // Index of the observation's value among the column's sorted distinct
    // values.
    int category(std::size_t i, std::size_t j) const { return category_[i * d_ + j]; }

    // Empirical margin of column j: support = distinct values, pmf = counts/n.
    const DiscreteMargin& margin(std::size_t j) const { return margins_[j]; }

    // Lower/upper empirical-cdf bounds of observation i's category on axis j
    // (the feet of its hat ramp).
    double ramp_lo(std::size_t i, std::size_t j) const {
        return margins_[j].cdf(category_[i * d_ + j] - 1);
    }
    double ramp_hi(std::size_t i, std::size_t j) const {
        return margins_[j].cdf(category_[i * d_ + j]);
    }

    // Hat function of observation i on axis j: 0 left of its category cell,
    // linear ramp across it, 1 to the right.
    double hat_function(std::size_t j, std::size_t i, double u) const;

    // Multilinear copula of the empirical joint pmf.
    CheckerboardCopula empirical_checkerboard() const;

    // Classical (step-function) empirical copula at u.
    double classical_empirical_copula(std::span<const double> u) const;

private:
    RankedSample() = default;

    std::size_t n_ = 0, d_ = 0;
    std::vector<double> data_, midrank_;
    std::vector<int> category_;
    std::vector<DiscreteMargin> margins_;
};

// Max |classical - checkerboard| over the tensor grid of all breakpoints
// plus `refinement` equispaced interior points per positive-width cell.
double checkerboard_vs_classical_gap(const RankedSample& s, int refinement = 2);

// Closed-form integrals of the hat functions on one axis, the building
// blocks of the Cramer-von Mises statistic and the multiplier bootstrap:
//   hat_product_integrals  n x n matrix of int V_i V_i' du
//   hat_moment_integrals   length-n vector of int u V_i(u) du
//   centered_hat_gram      n x n matrix of int (V_i - u)(V_i' - u) du
std::vector<double> hat_product_integrals(const RankedSample& s, std::size_t axis);
std::vector<double> hat_moment_integrals(const RankedSample& s, std::size_t axis);
std::vector<double> centered_hat_gram(const RankedSample& s, std::size_t axis);

} // namespace cbcop
