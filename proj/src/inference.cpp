#include "cbcop/inference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cbcop/errors.hpp"
#include "cbcop/kernels.hpp"
#include "cbcop/special.hpp"

namespace cbcop {

namespace {

void validate(const MultiplierConfig& cfg) {
    if (cfg.replicates < 1)
        throw validation_error("multiplier test: need at least one replicate");
}

void draw_multipliers(RngStream stream, MultiplierLaw law, std::vector<double>& xi) {
    switch (law) {
    case MultiplierLaw::normal:
        for (double& x : xi) x = stream.normal();
        break;
    case MultiplierLaw::rademacher:
        for (double& x : xi) x = stream.rademacher();
        break;
    }
}

} // namespace

MultiplierIndependenceTest::MultiplierIndependenceTest(const RankedSample& s) : n_(s.n()) {
    if (s.dim() != 2)
        throw std::domain_error("multiplier test: sample must be bivariate");
    if (n_ < 2)
        throw std::domain_error("multiplier test: need at least two observations");
    statistic_ = cvm_statistic(s);
    gram_ = centered_hat_gram(s, 0);
    const std::vector<double> axis2 = centered_hat_gram(s, 1);
    kernels::hadamard_inplace(gram_.data(), axis2.data(), gram_.size());
}

double MultiplierIndependenceTest::replicate(std::span<const double> xi) const {
    if (xi.size() != n_)
        throw std::domain_error("multiplier test: multiplier count must equal n");
    std::vector<double> alpha(n_);
    const double mean = kernels::sum(xi.data(), n_) / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i)
        alpha[i] = xi[i] - mean;
    const double value = kernels::quad_form(gram_.data(), alpha.data(), n_) /
                         static_cast<double>(n_);
    // Integral of a square; shave off rounding fuzz below zero.
    return value < 0.0 ? 0.0 : value;
}

TestReport MultiplierIndependenceTest::run(const MultiplierConfig& cfg) const {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();

    const RngStream root = RngStream(cfg.seed).child("multiplier");
    std::vector<double> xi(n_);
    TestReport report;
    report.statistic = statistic_;
    report.replicates = cfg.replicates;
    report.seed = cfg.seed;
    if (cfg.keep_replicates)
        report.replicate_values.reserve(static_cast<std::size_t>(cfg.replicates));

    int exceed = 0;
    for (int m = 0; m < cfg.replicates; ++m) {
        draw_multipliers(root.child(static_cast<std::uint64_t>(m)), cfg.law, xi);
        const double value = replicate(xi);
        exceed += value > statistic_;
        if (cfg.keep_replicates)
            report.replicate_values.push_back(value);
    }
    report.p_value = static_cast<double>(exceed) / static_cast<double>(cfg.replicates);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

double multiplier_replicate(const RankedSample& s, std::span<const double> xi) {
    return MultiplierIndependenceTest(s).replicate(xi);
}

TestReport independence_test(const RankedSample& s, const MultiplierConfig& cfg) {
    return MultiplierIndependenceTest(s).run(cfg);
}

TestReport chi_squared_test(const ContingencyTable& t) {
    TestReport report;
    report.statistic = chi_squared(t);
    const double df = (static_cast<double>(t.rows()) - 1.0) * (static_cast<double>(t.cols()) - 1.0);
    report.p_value = df > 0.0 ? chi_squared_survival(df, report.statistic) : 1.0;
    return report;
}

TestReport chi_squared_mc(const ContingencyTable& t, int replicates, std::uint64_t seed) {
    if (replicates < 1)
        throw validation_error("chi-squared mc: need at least one replicate");
    const auto t0 = std::chrono::steady_clock::now();
    const double chi_obs = chi_squared(t); // also validates the margins

    const std::size_t rows = t.rows(), cols = t.cols();
    const auto n = static_cast<std::size_t>(t.total());

    // Cumulative marginal frequencies for inverse-cdf draws.
    std::vector<double> row_cdf(rows), col_cdf(cols);
    double run = 0.0;
    for (std::size_t k = 0; k < rows; ++k) {
        run += static_cast<double>(t.row_total(k)) / static_cast<double>(t.total());
        row_cdf[k] = run;
    }
    row_cdf.back() = 1.0;
    run = 0.0;
    for (std::size_t l = 0; l < cols; ++l) {
        run += static_cast<double>(t.col_total(l)) / static_cast<double>(t.total());
        col_cdf[l] = run;
    }
    col_cdf.back() = 1.0;

    const RngStream root = RngStream(seed).child("chi2-mc");
    std::vector<long long> counts(rows * cols);
    std::vector<long long> rsum(rows), csum(cols);

    int exceed = 0;
    for (int b = 0; b < replicates; ++b) {
        RngStream stream = root.child(static_cast<std::uint64_t>(b));
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto rit = std::lower_bound(row_cdf.begin(), row_cdf.end(), stream.uniform());
            const auto cit = std::lower_bound(col_cdf.begin(), col_cdf.end(), stream.uniform());
            ++counts[static_cast<std::size_t>(rit - row_cdf.begin()) * cols +
                     static_cast<std::size_t>(cit - col_cdf.begin())];
        }
        std::fill(rsum.begin(), rsum.end(), 0);
        std::fill(csum.begin(), csum.end(), 0);
        for (std::size_t k = 0; k < rows; ++k)
            for (std::size_t l = 0; l < cols; ++l) {
                rsum[k] += counts[k * cols + l];
                csum[l] += counts[k * cols + l];
            }
        // Chi-squared of the replicate against its own margins; categories
        // the replicate never drew carry no mass and drop out.
        double chi = 0.0;
        const double nn = static_cast<double>(n);
        for (std::size_t k = 0; k < rows; ++k) {
            if (rsum[k] == 0)
                continue;
            for (std::size_t l = 0; l < cols; ++l) {
                if (csum[l] == 0)
                    continue;
                const double expected =
                    static_cast<double>(rsum[k]) * static_cast<double>(csum[l]) / nn;
                const double diff = static_cast<double>(counts[k * cols + l]) - expected;
                chi += diff * diff / expected;
            }
        }
        exceed += chi >= chi_obs;
    }

    TestReport report;
    report.statistic = chi_obs;
    report.p_value = static_cast<double>(exceed) / static_cast<double>(replicates);
    report.replicates = replicates;
    report.seed = seed;
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace cbcop
