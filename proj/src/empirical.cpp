#include "cbcop/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cbcop/errors.hpp"

namespace cbcop {

RankedSample RankedSample::rank(std::vector<double> data, std::size_t n, std::size_t d) {
    if (n < 1)
        throw validation_error("rank: need at least one observation");
    if (d < 2)
        throw validation_error("rank: need at least two columns");
    if (data.size() != n * d)
        throw validation_error("rank: data size does not match n x d");
    for (const double x : data)
        if (!std::isfinite(x))
            throw validation_error("rank: non-finite value in data");

    RankedSample s;
    s.n_ = n;
    s.d_ = d;
    s.data_ = std::move(data);
    s.midrank_.resize(n * d);
    s.category_.resize(n * d);
    s.margins_.reserve(d);

    std::vector<double> distinct;
    std::vector<std::size_t> counts;
    for (std::size_t j = 0; j < d; ++j) {
        distinct.clear();
        for (std::size_t i = 0; i < n; ++i)
            distinct.push_back(s.data_[i * d + j]);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

        counts.assign(distinct.size(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto it =
                std::lower_bound(distinct.begin(), distinct.end(), s.data_[i * d + j]);
            const int cat = static_cast<int>(it - distinct.begin());
            s.category_[i * d + j] = cat;
            ++counts[static_cast<std::size_t>(cat)];
        }

        // Mid-rank of tie block k: ranks before it plus (block size + 1)/2.
        std::vector<double> blockrank(distinct.size());
        std::size_t before = 0;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            blockrank[k] = static_cast<double>(before) + (static_cast<double>(counts[k]) + 1.0) / 2.0;
            before += counts[k];
        }
        for (std::size_t i = 0; i < n; ++i)
            s.midrank_[i * d + j] = blockrank[static_cast<std::size_t>(s.category_[i * d + j])];

        s.margins_.push_back(DiscreteMargin::from_counts(counts, distinct));
    }
    return s;
}

double RankedSample::hat_function(std::size_t j, std::size_t i, double u) const {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("hat_function: argument must lie in [0, 1]");
    const double a = ramp_lo(i, j);
    const double b = ramp_hi(i, j);
    if (u <= a)
        return 0.0;
    if (u >= b)
        return 1.0;
    return (u - a) / (b - a);
}

CheckerboardCopula RankedSample::empirical_checkerboard() const {
    std::vector<std::size_t> extents(d_);
    for (std::size_t j = 0; j < d_; ++j)
        extents[j] = margins_[j].size();
    NdShape shape(extents);

    std::vector<double> cells(shape.size(), 0.0);
    std::vector<int> idx(d_);
    const double w = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < d_; ++j)
            idx[j] = category_[i * d_ + j];
        cells[shape.offset(idx)] += w;
    }
    return CheckerboardCopula::build(JointPmf(margins_, std::move(cells)));
}

double RankedSample::classical_empirical_copula(std::span<const double> u) const {
    if (u.size() != d_)
        throw std::domain_error("classical_empirical_copula: dimension mismatch");
    for (const double t : u)
        if (!(t >= 0.0 && t <= 1.0))
            throw std::domain_error("classical_empirical_copula: point outside the unit cube");
    std::size_t inside = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        bool all = true;
        for (std::size_t j = 0; j < d_ && all; ++j)
            all = ramp_hi(i, j) <= u[j];
        inside += all;
    }
    return static_cast<double>(inside) / static_cast<double>(n_);
}

double checkerboard_vs_classical_gap(const RankedSample& s, int refinement) {
    if (refinement < 0)
        throw std::domain_error("checkerboard_vs_classical_gap: refinement must be >= 0");
    const std::size_t d = s.dim();
    const CheckerboardCopula cb = s.empirical_checkerboard();

    // Evaluation grid per axis: every breakpoint plus equispaced interior
    // points of each cell.
    std::vector<std::vector<double>> grid(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto& breaks = s.margin(j).breakpoints();
        auto& g = grid[j];
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            g.push_back(breaks[k]);
            for (int r = 1; r <= refinement; ++r)
                g.push_back(breaks[k] + (breaks[k + 1] - breaks[k]) * static_cast<double>(r) /
                                            static_cast<double>(refinement + 1));
        }
        g.push_back(breaks.back());
    }

    std::vector<std::size_t> extents(d);
    for (std::size_t j = 0; j < d; ++j)
        extents[j] = grid[j].size();
    NdShape shape(extents);

    std::vector<int> idx(d, 0);
    std::vector<double> u(d);
    double worst = 0.0;
    do {
        for (std::size_t j = 0; j < d; ++j)
            u[j] = grid[j][static_cast<std::size_t>(idx[j])];
        worst = std::max(worst,
                         std::fabs(s.classical_empirical_copula(u) - cb.cdf(u)));
    } while (shape.next(idx));
    return worst;
}

std::vector<double> hat_product_integrals(const RankedSample& s, std::size_t axis) {
    const std::size_t n = s.n();
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = s.ramp_lo(i, axis);
        b[i] = s.ramp_hi(i, axis);
    }
    std::vector<double> p(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i; k < n; ++k) {
            double v;
            if (s.category(i, axis) == s.category(k, axis)) {
                // Same category: int V^2 across the ramp plus the flat tail.
                v = (b[i] - a[i]) / 3.0 + (1.0 - b[i]);
            } else {
                // Disjoint ramps: the earlier hat is 1 on the later ramp.
                const std::size_t later = a[i] > a[k] ? i : k;
                v = (b[later] - a[later]) / 2.0 + (1.0 - b[later]);
            }
            p[i * n + k] = v;
            p[k * n + i] = v;
        }
    }
    return p;
}

std::vector<double> hat_moment_integrals(const RankedSample& s, std::size_t axis) {
    const std::size_t n = s.n();
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = s.ramp_lo(i, axis);
        const double b = s.ramp_hi(i, axis);
        const double w = b - a;
        q[i] = w * w / 3.0 + a * w / 2.0 + (1.0 - b * b) / 2.0;
    }
    return q;
}

std::vector<double> centered_hat_gram(const RankedSample& s, std::size_t axis) {
    const std::size_t n = s.n();
    std::vector<double> g = hat_product_integrals(s, axis);
    const std::vector<double> q = hat_moment_integrals(s, axis);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            g[i * n + k] += 1.0 / 3.0 - q[i] - q[k];
    return g;
}

} // namespace cbcop
