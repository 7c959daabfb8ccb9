#include "cbcop/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cbcop/errors.hpp"
#include "cbcop/kernels.hpp"

namespace cbcop {

ContingencyTable::ContingencyTable(std::size_t rows, std::size_t cols,
                                   std::vector<long long> counts)
    : rows_(rows), cols_(cols), counts_(std::move(counts)) {
    if (rows_ == 0 || cols_ == 0)
        throw validation_error("contingency table: empty dimensions");
    if (counts_.size() != rows_ * cols_)
        throw validation_error("contingency table: counts size does not match dimensions");
    row_totals_.assign(rows_, 0);
    col_totals_.assign(cols_, 0);
    total_ = 0;
    for (std::size_t k = 0; k < rows_; ++k)
        for (std::size_t l = 0; l < cols_; ++l) {
            const long long c = counts_[k * cols_ + l];
            if (c < 0)
                throw validation_error("contingency table: negative count");
            row_totals_[k] += c;
            col_totals_[l] += c;
            total_ += c;
        }
    if (total_ < 1)
        throw validation_error("contingency table: total count must be >= 1");
}

ContingencyTable ContingencyTable::from_sample(const RankedSample& s) {
    if (s.dim() != 2)
        throw std::domain_error("contingency table: sample must be bivariate");
    const std::size_t rows = s.margin(0).size();
    const std::size_t cols = s.margin(1).size();
    std::vector<long long> counts(rows * cols, 0);
    for (std::size_t i = 0; i < s.n(); ++i)
        ++counts[static_cast<std::size_t>(s.category(i, 0)) * cols +
                 static_cast<std::size_t>(s.category(i, 1))];
    return ContingencyTable(rows, cols, std::move(counts));
}

RankedSample ContingencyTable::to_sample() const {
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(total_) * 2);
    for (std::size_t k = 0; k < rows_; ++k)
        for (std::size_t l = 0; l < cols_; ++l)
            for (long long c = 0; c < counts_[k * cols_ + l]; ++c) {
                data.push_back(static_cast<double>(k));
                data.push_back(static_cast<double>(l));
            }
    return RankedSample::rank(std::move(data), static_cast<std::size_t>(total_), 2);
}

namespace {

// Count strictly decreasing pairs (inversions) in y by merge sort.
long long count_inversions(std::vector<double>& y, std::vector<double>& buf, std::size_t lo,
                           std::size_t hi) {
    if (hi - lo < 2)
        return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    long long inv = count_inversions(y, buf, lo, mid) + count_inversions(y, buf, mid, hi);
    std::size_t a = lo, b = mid, out = lo;
    while (a < mid && b < hi) {
        if (y[b] < y[a]) {
            inv += static_cast<long long>(mid - a);
            buf[out++] = y[b++];
        } else {
            buf[out++] = y[a++];
        }
    }
    while (a < mid) buf[out++] = y[a++];
    while (b < hi) buf[out++] = y[b++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
              buf.begin() + static_cast<std::ptrdiff_t>(hi),
              y.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

long long choose2(long long t) { return t * (t - 1) / 2; }

} // namespace

double kendall_tau(const RankedSample& s) {
    if (s.dim() != 2)
        throw std::domain_error("kendall_tau: sample must be bivariate");
    const std::size_t n = s.n();
    if (n < 2)
        throw std::domain_error("kendall_tau: need at least two observations");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&s](std::size_t i, std::size_t k) {
        if (s.value(i, 0) != s.value(k, 0))
            return s.value(i, 0) < s.value(k, 0);
        return s.value(i, 1) < s.value(k, 1);
    });

    // Tie bookkeeping: pairs tied in x, in y, and in both.
    long long tx = 0, ty = 0, txy = 0;
    {
        long long run = 1;
        for (std::size_t i = 1; i <= n; ++i) {
            if (i < n && s.value(order[i], 0) == s.value(order[i - 1], 0)) {
                ++run;
            } else {
                tx += choose2(run);
                run = 1;
            }
        }
        run = 1;
        for (std::size_t i = 1; i <= n; ++i) {
            if (i < n && s.value(order[i], 0) == s.value(order[i - 1], 0) &&
                s.value(order[i], 1) == s.value(order[i - 1], 1)) {
                ++run;
            } else {
                txy += choose2(run);
                run = 1;
            }
        }
        std::vector<double> ys(n);
        for (std::size_t i = 0; i < n; ++i) ys[i] = s.value(i, 1);
        std::sort(ys.begin(), ys.end());
        run = 1;
        for (std::size_t i = 1; i <= n; ++i) {
            if (i < n && ys[i] == ys[i - 1]) {
                ++run;
            } else {
                ty += choose2(run);
                run = 1;
            }
        }
    }

    // After the lexicographic sort, strictly discordant pairs are exactly
    // the strict inversions of the y sequence.
    std::vector<double> y(n), buf(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = s.value(order[i], 1);
    const long long discordant = count_inversions(y, buf, 0, n);

    const long long pairs = choose2(static_cast<long long>(n));
    const long long untied = pairs - tx - ty + txy;
    const long long concordant = untied - discordant;
    return static_cast<double>(concordant - discordant) / static_cast<double>(pairs);
}

double kendall_tau_integral(const RankedSample& s) {
    if (s.dim() != 2)
        throw std::domain_error("kendall_tau_integral: sample must be bivariate");
    const std::size_t n = s.n();
    if (n < 2)
        throw std::domain_error("kendall_tau_integral: need at least two observations");
    const double kappa = static_cast<double>(n) / static_cast<double>(n - 1);
    return kappa * s.empirical_checkerboard().population_tau();
}

double spearman_rho(const RankedSample& s) {
    if (s.dim() != 2)
        throw std::domain_error("spearman_rho: sample must be bivariate");
    const double n = static_cast<double>(s.n());
    const double center = (n + 1.0) / 2.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i)
        acc += (s.midrank(i, 0) - center) * (s.midrank(i, 1) - center);
    return 12.0 * acc / (n * n * n);
}

double spearman_rho_multivariate(const RankedSample& s) {
    const double n = static_cast<double>(s.n());
    const std::size_t d = s.dim();
    const double pow2 = std::ldexp(1.0, static_cast<int>(d));
    const double scale = pow2 * (static_cast<double>(d) + 1.0) / (pow2 - static_cast<double>(d) - 1.0);
    const double shift = (2.0 * n + 1.0) / (2.0 * n);
    double mean = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        double prod = 1.0;
        for (std::size_t j = 0; j < d; ++j)
            prod *= shift - s.midrank(i, j) / n;
        mean += prod;
    }
    mean /= n;
    return scale * (mean - 1.0 / pow2);
}

double chi_squared(const ContingencyTable& t) {
    const double n = static_cast<double>(t.total());
    for (std::size_t k = 0; k < t.rows(); ++k)
        if (t.row_total(k) == 0)
            throw validation_error("chi_squared: zero row total");
    for (std::size_t l = 0; l < t.cols(); ++l)
        if (t.col_total(l) == 0)
            throw validation_error("chi_squared: zero column total");
    double acc = 0.0;
    for (std::size_t k = 0; k < t.rows(); ++k)
        for (std::size_t l = 0; l < t.cols(); ++l) {
            const double fkl = static_cast<double>(t.count(k, l)) / n;
            const double fk = static_cast<double>(t.row_total(k)) / n;
            const double fl = static_cast<double>(t.col_total(l)) / n;
            const double diff = fkl - fk * fl;
            acc += diff * diff / (fk * fl);
        }
    return n * acc;
}

double g_squared(const ContingencyTable& t) {
    const double n = static_cast<double>(t.total());
    for (std::size_t k = 0; k < t.rows(); ++k)
        if (t.row_total(k) == 0)
            throw validation_error("g_squared: zero row total");
    for (std::size_t l = 0; l < t.cols(); ++l)
        if (t.col_total(l) == 0)
            throw validation_error("g_squared: zero column total");
    double acc = 0.0;
    for (std::size_t k = 0; k < t.rows(); ++k)
        for (std::size_t l = 0; l < t.cols(); ++l) {
            const long long c = t.count(k, l);
            if (c == 0)
                continue;
            const double fkl = static_cast<double>(c) / n;
            const double fk = static_cast<double>(t.row_total(k)) / n;
            const double fl = static_cast<double>(t.col_total(l)) / n;
            acc += fkl * std::log(fkl / (fk * fl));
        }
    return 2.0 * n * acc;
}

double cvm_statistic(const RankedSample& s) {
    const std::size_t n = s.n();
    const std::size_t d = s.dim();

    // S_n = (1/n) sum_{i,i'} prod_j P_j(i,i') - 2 sum_i prod_j Q_j(i) + n 3^-d.
    std::vector<double> pair_prod = hat_product_integrals(s, 0);
    std::vector<double> scratch;
    for (std::size_t j = 1; j + 1 < d; ++j) {
        scratch = hat_product_integrals(s, j);
        kernels::hadamard_inplace(pair_prod.data(), scratch.data(), pair_prod.size());
    }
    const std::vector<double> last = hat_product_integrals(s, d - 1);
    const double term_pairs = kernels::dot(pair_prod.data(), last.data(), pair_prod.size());

    std::vector<double> moment_prod = hat_moment_integrals(s, 0);
    for (std::size_t j = 1; j + 1 < d; ++j) {
        scratch = hat_moment_integrals(s, j);
        kernels::hadamard_inplace(moment_prod.data(), scratch.data(), moment_prod.size());
    }
    const std::vector<double> last_moment = hat_moment_integrals(s, d - 1);
    const double term_moments =
        kernels::dot(moment_prod.data(), last_moment.data(), moment_prod.size());

    double pow3 = 1.0;
    for (std::size_t j = 0; j < d; ++j) pow3 *= 3.0;
    const double nn = static_cast<double>(n);
    const double value = term_pairs / nn - 2.0 * term_moments + nn / pow3;
    // The statistic is an integral of a square; clamp the rounding fuzz of
    // the cancellation above so exact-independence samples report 0.
    return value < 0.0 ? 0.0 : value;
}

} // namespace cbcop
