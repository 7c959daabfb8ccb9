#pragma once

// A univariate probability mass function on a finite, strictly increasing
// support, with the pieces the checkerboard construction needs: the cdf and
// its generalized inverse, the piecewise-linear continuation of the cdf
// across unit cells, and the lambda interpolation weight of a point in
// [0, 1] relative to the cdf's range.
//
// The continuation and its inverse work in index space: integer point k
// stands for the k-th support atom, and cell [k-1, k) carries mass p_k
// spread uniformly.

#include <cstddef>
#include <vector>

namespace cbcop {

class DiscreteMargin {
public:
    // pmf entries must be non-negative, sum to 1 within 1e-12, with at least
    // one strictly positive entry.  support, when given, must be strictly
    // increasing and of matching length; it defaults to 0, 1, ..., K.
    static DiscreteMargin from_pmf(std::vector<double> pmf, std::vector<double> support = {});

    // Exact construction from tie-block counts: probabilities and cdf values
    // are the correctly rounded ratios count/n and cum/n, so the sum check
    // and its accumulation error are avoided entirely.  Used for empirical
    // margins, where the number of categories can be as large as n.
    static DiscreteMargin from_counts(const std::vector<std::size_t>& counts,
                                      std::vector<double> support = {});

    // Named families used by the simulation harness.
    static DiscreteMargin binomial(int m, double p);
    static DiscreteMargin poisson(double lambda, double tail_tol = 1e-12);
    static DiscreteMargin geometric(double p, double tail_tol = 1e-12);

    std::size_t size() const { return pmf_.size(); } // number of atoms K+1

    double support_at(int k) const;
    double prob(int k) const;

    // F at the k-th atom; accepts k = -1 (returns 0).  Last value is pinned
    // to exactly 1.
    double cdf(int k) const;

    // Smallest k with F(k) >= u, for u in (0, 1].
    int quantile(double u) const;

    // Piecewise-linear cdf extension: 0 at and left of -1, 1 at and right of
    // K, linear with slope p_k on [k-1, k].
    double continuation_cdf(double x) const;

    // Generalized inverse of the continuation on [0, 1]; maps 0 to -1.
    double continuation_quantile(double u) const;

    // Position of u within the closure of the cdf's range: bracketing
    // breakpoints lo <= u <= hi and weight w with u = (1-w)*lo + w*hi
    // (w = 1 when lo == hi == u).
    struct Lambda {
        double weight, lo, hi;
    };
    Lambda lambda_weight(double u) const;

    // Same bracket in cdf-index form, for grid lookups: indices in
    // {-1, 0, ..., K}, weight on the upper vertex.  Breakpoints collapse to
    // lo_index == hi_index with weight 1.
    struct Bracket {
        double weight;
        int lo_index, hi_index;
    };
    Bracket bracket(double u) const;

    const std::vector<double>& support() const { return support_; }
    const std::vector<double>& pmf() const { return pmf_; }
    // Deduplicated sorted breakpoints {0} U {F(k)}.
    const std::vector<double>& breakpoints() const { return breaks_; }

private:
    DiscreteMargin() = default;

    std::vector<double> support_, pmf_, cdf_, breaks_;
};

} // namespace cbcop
