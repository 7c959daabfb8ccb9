#pragma once

// Tests of mutual independence for count data:
//   * the multiplier-bootstrap test built on the Cramer-von Mises statistic
//     of the empirical checkerboard copula (bivariate),
//   * the classical chi-squared test with asymptotic p-value,
//   * a Monte Carlo chi-squared variant that resamples n observations from
//     the product of the observed margins.
// Everything is deterministic given the seed; replicate draws come from
// per-replicate substreams, so execution order never matters.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cbcop/rng.hpp"
#include "cbcop/statistics.hpp"

namespace cbcop {

enum class MultiplierLaw { normal, rademacher };

struct MultiplierConfig {
    int replicates = 1000;
    MultiplierLaw law = MultiplierLaw::normal;
    std::uint64_t seed = 0;
    bool keep_replicates = false;
};

struct TestReport {
    double statistic = 0.0;
    double p_value = 0.0;
    int replicates = 0;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;
    std::vector<double> replicate_values; // filled when requested
};

// Precomputes the centered hat Grams of a bivariate sample once and maps
// multiplier vectors to bootstrap replicates of the statistic.
class MultiplierIndependenceTest {
public:
    explicit MultiplierIndependenceTest(const RankedSample& s);

    double statistic() const { return statistic_; }

    // S^(m) = (1/n) alpha^T (A o B) alpha with alpha = xi - mean(xi).
    double replicate(std::span<const double> xi) const;

    TestReport run(const MultiplierConfig& cfg) const;

private:
    std::size_t n_;
    double statistic_;
    std::vector<double> gram_; // elementwise product of the two axis Grams
};

// One-shot bootstrap replicate for a given multiplier vector.
double multiplier_replicate(const RankedSample& s, std::span<const double> xi);

// Full multiplier test: statistic, M replicates, p = (1/M) #{S^(m) > S_n}.
TestReport independence_test(const RankedSample& s, const MultiplierConfig& cfg);

// Chi-squared test with the asymptotic p-value at (K-1)(L-1) degrees of
// freedom.
TestReport chi_squared_test(const ContingencyTable& t);

// Monte Carlo chi-squared: B replicate tables of n draws from the product
// of the observed margins; p = (1/B) #{chi2_b >= chi2_obs}.
TestReport chi_squared_mc(const ContingencyTable& t, int replicates, std::uint64_t seed);

} // namespace cbcop
