#include "cbcop/margin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cbcop/errors.hpp"

namespace cbcop {

DiscreteMargin DiscreteMargin::from_pmf(std::vector<double> pmf, std::vector<double> support) {
    if (pmf.empty())
        throw validation_error("margin: pmf must be non-empty");
    if (support.empty()) {
        support.resize(pmf.size());
        for (std::size_t k = 0; k < pmf.size(); ++k)
            support[k] = static_cast<double>(k);
    }
    if (support.size() != pmf.size())
        throw validation_error("margin: support and pmf lengths differ");
    for (std::size_t k = 0; k + 1 < support.size(); ++k)
        if (!(support[k] < support[k + 1]))
            throw validation_error("margin: support must be strictly increasing");

    double total = 0.0;
    bool any_positive = false;
    for (const double p : pmf) {
        if (!(p >= 0.0) || !(p <= 1.0))
            throw validation_error("margin: pmf entries must lie in [0, 1]");
        any_positive = any_positive || p > 0.0;
        total += p;
    }
    if (!any_positive)
        throw validation_error("margin: pmf has no positive entry");
    if (std::fabs(total - 1.0) > 1e-12)
        throw validation_error("margin: pmf does not sum to 1");

    DiscreteMargin m;
    m.support_ = std::move(support);
    m.pmf_ = std::move(pmf);
    m.cdf_.resize(m.pmf_.size());
    double run = 0.0;
    for (std::size_t k = 0; k < m.pmf_.size(); ++k) {
        run += m.pmf_[k];
        m.cdf_[k] = run;
    }
    m.cdf_.back() = 1.0;

    m.breaks_.reserve(m.cdf_.size() + 1);
    m.breaks_.push_back(0.0);
    for (const double f : m.cdf_)
        if (f > m.breaks_.back())
            m.breaks_.push_back(f);
    return m;
}

DiscreteMargin DiscreteMargin::from_counts(const std::vector<std::size_t>& counts,
                                           std::vector<double> support) {
    if (counts.empty())
        throw validation_error("margin: counts must be non-empty");
    if (support.empty()) {
        support.resize(counts.size());
        for (std::size_t k = 0; k < counts.size(); ++k)
            support[k] = static_cast<double>(k);
    }
    if (support.size() != counts.size())
        throw validation_error("margin: support and counts lengths differ");
    for (std::size_t k = 0; k + 1 < support.size(); ++k)
        if (!(support[k] < support[k + 1]))
            throw validation_error("margin: support must be strictly increasing");

    std::size_t n = 0;
    for (const std::size_t c : counts)
        n += c;
    if (n == 0)
        throw validation_error("margin: counts have no positive entry");

    DiscreteMargin m;
    m.support_ = std::move(support);
    m.pmf_.resize(counts.size());
    m.cdf_.resize(counts.size());
    const double dn = static_cast<double>(n);
    std::size_t cum = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        m.pmf_[k] = static_cast<double>(counts[k]) / dn;
        cum += counts[k];
        m.cdf_[k] = static_cast<double>(cum) / dn;
    }
    m.cdf_.back() = 1.0;

    m.breaks_.reserve(m.cdf_.size() + 1);
    m.breaks_.push_back(0.0);
    for (const double f : m.cdf_)
        if (f > m.breaks_.back())
            m.breaks_.push_back(f);
    return m;
}

DiscreteMargin DiscreteMargin::binomial(int trials, double p) {
    if (trials < 0)
        throw validation_error("binomial margin: trials must be >= 0");
    if (!(p > 0.0 && p < 1.0))
        throw validation_error("binomial margin: p must lie in (0, 1)");
    std::vector<double> pmf(static_cast<std::size_t>(trials) + 1);
    pmf[0] = std::pow(1.0 - p, trials);
    const double odds = p / (1.0 - p);
    for (int k = 0; k < trials; ++k)
        pmf[k + 1] = pmf[k] * odds * static_cast<double>(trials - k) / static_cast<double>(k + 1);
    double total = 0.0;
    for (const double q : pmf) total += q;
    for (double& q : pmf) q /= total;
    return from_pmf(std::move(pmf));
}

DiscreteMargin DiscreteMargin::poisson(double lambda, double tail_tol) {
    if (!(lambda > 0.0))
        throw validation_error("poisson margin: lambda must be positive");
    std::vector<double> pmf;
    double term = std::exp(-lambda);
    double total = term;
    pmf.push_back(term);
    // Truncate once the remaining tail mass is below tolerance (and we are
    // past the mode, so the terms are decreasing), then renormalize.
    for (int k = 1; k < 4096; ++k) {
        term *= lambda / static_cast<double>(k);
        pmf.push_back(term);
        total += term;
        if (static_cast<double>(k) > lambda && 1.0 - total < tail_tol)
            break;
    }
    for (double& q : pmf) q /= total;
    return from_pmf(std::move(pmf));
}

DiscreteMargin DiscreteMargin::geometric(double p, double tail_tol) {
    if (!(p > 0.0 && p < 1.0))
        throw validation_error("geometric margin: p must lie in (0, 1)");
    // Number of failures before the first success: p_k = p (1-p)^k, k >= 0.
    std::vector<double> pmf;
    double term = p;
    double total = 0.0;
    for (int k = 0; k < 65536; ++k) {
        pmf.push_back(term);
        total += term;
        if (1.0 - total < tail_tol)
            break;
        term *= 1.0 - p;
    }
    for (double& q : pmf) q /= total;
    return from_pmf(std::move(pmf));
}

double DiscreteMargin::support_at(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= support_.size())
        throw std::domain_error("margin: support index out of range");
    return support_[static_cast<std::size_t>(k)];
}

double DiscreteMargin::prob(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= pmf_.size())
        throw std::domain_error("margin: pmf index out of range");
    return pmf_[static_cast<std::size_t>(k)];
}

double DiscreteMargin::cdf(int k) const {
    if (k == -1)
        return 0.0;
    if (k < 0 || static_cast<std::size_t>(k) >= cdf_.size())
        throw std::domain_error("margin: cdf index out of range");
    return cdf_[static_cast<std::size_t>(k)];
}

int DiscreteMargin::quantile(double u) const {
    if (!(u > 0.0 && u <= 1.0))
        throw std::domain_error("margin: quantile argument must lie in (0, 1]");
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(it - cdf_.begin());
}

double DiscreteMargin::continuation_cdf(double x) const {
    const int last = static_cast<int>(pmf_.size()) - 1;
    if (x <= -1.0)
        return 0.0;
    if (x >= static_cast<double>(last))
        return 1.0;
    // x lies in cell [k-1, k) with k in {0, ..., last}.
    const int k = static_cast<int>(std::floor(x)) + 1;
    const double lo = cdf(k - 1);
    return lo + (cdf(k) - lo) * (x - static_cast<double>(k - 1));
}

double DiscreteMargin::continuation_quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("margin: continuation_quantile argument must lie in [0, 1]");
    if (u == 0.0)
        return -1.0;
    const int k = quantile(u);
    const double lo = cdf(k - 1);
    return static_cast<double>(k - 1) + (u - lo) / (cdf(k) - lo);
}

DiscreteMargin::Lambda DiscreteMargin::lambda_weight(double u) const {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("margin: lambda_weight argument must lie in [0, 1]");
    const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), u);
    const double hi = *it;
    if (hi == u)
        return {1.0, u, u};
    const double lo = *(it - 1);
    return {(u - lo) / (hi - lo), lo, hi};
}

DiscreteMargin::Bracket DiscreteMargin::bracket(double u) const {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("margin: bracket argument must lie in [0, 1]");
    if (u == 0.0)
        return {1.0, -1, -1};
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    const int k = static_cast<int>(it - cdf_.begin());
    if (*it == u)
        return {1.0, k, k};
    const double lo = cdf(k - 1);
    return {(u - lo) / (*it - lo), k - 1, k};
}

} // namespace cbcop
