#include "doctest.h"

#include <cmath>
#include <vector>

#include "cbcop/errors.hpp"
#include "cbcop/rng.hpp"
#include "cbcop/statistics.hpp"
#include "support/oracles.hpp"

using cbcop::ContingencyTable;
using cbcop::RankedSample;

namespace {

RankedSample random_tied(std::size_t n, std::size_t d, int levels, cbcop::RngStream& rng) {
    std::vector<double> data(n * d);
    for (auto& x : data) x = std::floor(rng.uniform() * levels);
    return RankedSample::rank(std::move(data), n, d);
}

RankedSample diagonal2_sample() { return RankedSample::rank({0, 0, 1, 1}, 2, 2); }

} // namespace

TEST_CASE("kendall tau on small hand samples") {
    CHECK(cbcop::kendall_tau(diagonal2_sample()) == 1.0);
    // {(0,0),(1,1),(2,0)}: one concordant pair, one discordant, one y-tie.
    const auto s = RankedSample::rank({0, 0, 1, 1, 2, 0}, 3, 2);
    CHECK(cbcop::kendall_tau(s) == doctest::Approx(0.0).epsilon(1e-15).scale(1.0));
    // {(0,0),(1,1),(2,1)}: two concordant pairs, one y-tie.
    const auto t = RankedSample::rank({0, 0, 1, 1, 2, 1}, 3, 2);
    CHECK(cbcop::kendall_tau(t) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    // {(0,1),(1,0),(2,2)}: two concordant, one discordant.
    const auto w = RankedSample::rank({0, 1, 1, 0, 2, 2}, 3, 2);
    CHECK(cbcop::kendall_tau(w) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // Negating y flips the sign.
    const auto r = RankedSample::rank({0, 0, 1, -1, 2, -1}, 3, 2);
    CHECK(cbcop::kendall_tau(r) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("kendall tau equals the exhaustive pair count") {
    cbcop::RngStream rng(84001);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 48);
        const auto s = random_tied(n, 2, 1 + trial % 5, rng);
        const auto [conc, disc] = oracles::brute_concordance(s);
        const double pairs = 0.5 * double(n) * double(n - 1);
        CHECK(cbcop::kendall_tau(s) == doctest::Approx((conc - disc) / pairs).epsilon(1e-14));
    }
}

TEST_CASE("integral form of tau matches the pair count") {
    cbcop::RngStream rng(84002);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 28);
        const auto s = random_tied(n, 2, 4, rng);
        CHECK(cbcop::kendall_tau_integral(s) ==
              doctest::Approx(cbcop::kendall_tau(s)).epsilon(1e-10).scale(1.0));
    }
    // Untied comonotone staircase: both forms give exactly 1.
    std::vector<double> stair;
    for (int i = 0; i < 10; ++i) {
        stair.push_back(i);
        stair.push_back(i);
    }
    const auto s = RankedSample::rank(stair, 10, 2);
    CHECK(cbcop::kendall_tau(s) == 1.0);
    CHECK(cbcop::kendall_tau_integral(s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spearman rho on hand samples") {
    CHECK(cbcop::spearman_rho(diagonal2_sample()) == doctest::Approx(0.75).epsilon(1e-15));
    const auto anti = RankedSample::rank({0, 1, 1, 0}, 2, 2);
    CHECK(cbcop::spearman_rho(anti) == doctest::Approx(-0.75).epsilon(1e-15));
    // A constant column has all mid-ranks at the centre: rho = 0 exactly.
    const auto flat = RankedSample::rank({0, 7, 1, 7, 2, 7}, 3, 2);
    CHECK(cbcop::spearman_rho(flat) == 0.0);
}

TEST_CASE("multivariate rho reduces to the bivariate formula") {
    cbcop::RngStream rng(84003);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 30);
        const auto s = random_tied(n, 2, 4, rng);
        CHECK(cbcop::spearman_rho_multivariate(s) ==
              doctest::Approx(cbcop::spearman_rho(s)).epsilon(1e-12).scale(1.0));
    }
    // Comonotone two-point sample in three dimensions.
    const auto s3 = RankedSample::rank({0, 0, 0, 1, 1, 1}, 2, 3);
    CHECK(cbcop::spearman_rho_multivariate(s3) == doctest::Approx(0.75).epsilon(1e-14));
    // A perfectly factoring sample gives exactly zero.
    const auto prod = RankedSample::rank({0, 0, 0, 1, 1, 0, 1, 1}, 4, 2);
    CHECK(cbcop::spearman_rho_multivariate(prod) ==
          doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
}

TEST_CASE("rho equals twelve times the centered copula integral") {
    cbcop::RngStream rng(84004);
    const auto s = random_tied(18, 2, 3, rng);
    const auto c = s.empirical_checkerboard();
    oracles::QuadratureSpec spec;
    spec.gauss_order = 3;
    spec.cuts_u = s.margin(0).breakpoints();
    spec.cuts_v = s.margin(1).breakpoints();
    const double integral = oracles::tensor_quadrature(
        [&](double u, double v) { return c.cdf(std::array{u, v}) - u * v; }, spec);
    // The mid-rank moment formula is algebraically 12 int (C_n - Pi) dPi;
    // the -(n+1)/2 centering and the hat integrals encode the same shift.
    CHECK(cbcop::spearman_rho(s) ==
          doctest::Approx(12.0 * integral).epsilon(1e-10).scale(1.0));
}

TEST_CASE("contingency tables round-trip through samples") {
    ContingencyTable t(2, 3, {3, 0, 1, 2, 4, 0});
    CHECK(t.total() == 10);
    CHECK(t.row_total(0) == 4);
    CHECK(t.col_total(1) == 4);
    const auto s = t.to_sample();
    CHECK(s.n() == 10);
    const auto back = ContingencyTable::from_sample(s);
    REQUIRE(back.rows() == 2);
    REQUIRE(back.cols() == 3);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 3; ++l) CHECK(back.count(k, l) == t.count(k, l));
    CHECK_THROWS_AS(ContingencyTable(2, 2, {1, 2, 3}), cbcop::validation_error);
    CHECK_THROWS_AS(ContingencyTable(2, 2, {1, -2, 3, 4}), cbcop::validation_error);
    CHECK_THROWS_AS(ContingencyTable(2, 2, {0, 0, 0, 0}), cbcop::validation_error);
}

TEST_CASE("chi-squared and likelihood ratio on hand tables") {
    const ContingencyTable diag(2, 2, {1, 0, 0, 1});
    CHECK(cbcop::chi_squared(diag) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(cbcop::g_squared(diag) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-14));
    const ContingencyTable diag5(2, 2, {5, 0, 0, 5});
    CHECK(cbcop::chi_squared(diag5) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(cbcop::g_squared(diag5) == doctest::Approx(20.0 * std::log(2.0)).epsilon(1e-14));
    // Independence exactly: both vanish.
    const ContingencyTable prod(2, 2, {1, 1, 1, 1});
    CHECK(cbcop::chi_squared(prod) == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
    CHECK(cbcop::g_squared(prod) == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
    // Degenerate margins are rejected.
    CHECK_THROWS_AS(cbcop::chi_squared(ContingencyTable(2, 2, {1, 1, 0, 0})),
                    cbcop::validation_error);
    CHECK_THROWS_AS(cbcop::g_squared(ContingencyTable(2, 2, {1, 0, 1, 0})),
                    cbcop::validation_error);
}

TEST_CASE("chi-squared and g-squared equal their density integrals") {
    // chi2 = n int (c - 1)^2 dPi and G2 = 2n int log(c) dC for the
    // empirical checkerboard density c, both sums over cells.
    cbcop::RngStream rng(84005);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 6 + static_cast<std::size_t>(rng.uniform() * 40);
        auto s = random_tied(n, 2, 3, rng);
        const auto t = ContingencyTable::from_sample(s);
        bool degenerate = false;
        for (std::size_t k = 0; k < t.rows(); ++k) degenerate |= t.row_total(k) == 0;
        for (std::size_t l = 0; l < t.cols(); ++l) degenerate |= t.col_total(l) == 0;
        if (degenerate) continue;   // cannot happen: categories come from data
        const auto c = s.empirical_checkerboard();
        double chi_int = 0.0, g_int = 0.0;
        for (std::size_t k = 0; k < t.rows(); ++k)
            for (std::size_t l = 0; l < t.cols(); ++l) {
                const double fk = double(t.row_total(k)) / double(n);
                const double fl = double(t.col_total(l)) / double(n);
                const double fkl = double(t.count(k, l)) / double(n);
                const double vol = fk * fl;
                const double dens = fkl / vol;
                chi_int += double(n) * vol * (dens - 1.0) * (dens - 1.0);
                if (fkl > 0) g_int += 2.0 * double(n) * fkl * std::log(dens);
            }
        CHECK(cbcop::chi_squared(t) == doctest::Approx(chi_int).epsilon(1e-10).scale(1.0));
        CHECK(cbcop::g_squared(t) == doctest::Approx(g_int).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("cramer-von mises statistic on hand samples") {
    CHECK(cbcop::cvm_statistic(diagonal2_sample()) ==
          doctest::Approx(1.0 / 72.0).epsilon(1e-13));
    // A perfectly factoring sample: the empirical copula is the independence
    // copula, so the statistic collapses to rounding fuzz.
    const auto prod = RankedSample::rank({0, 0, 0, 1, 1, 0, 1, 1}, 4, 2);
    CHECK(cbcop::cvm_statistic(prod) >= 0.0);
    CHECK(cbcop::cvm_statistic(prod) < 1e-13);
}

TEST_CASE("cramer-von mises matches tensor quadrature") {
    cbcop::RngStream rng(84006);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform() * 26);
        const auto s = random_tied(n, 2, 3, rng);
        const auto c = s.empirical_checkerboard();
        oracles::QuadratureSpec spec;
        spec.gauss_order = 3;
        spec.cuts_u = s.margin(0).breakpoints();
        spec.cuts_v = s.margin(1).breakpoints();
        const double integral = oracles::tensor_quadrature(
            [&](double u, double v) {
                const double diff = c.cdf(std::array{u, v}) - u * v;
                return diff * diff;
            },
            spec);
        CHECK(cbcop::cvm_statistic(s) ==
              doctest::Approx(double(n) * integral).epsilon(1e-8).scale(1.0));
    }
    // Trivariate case against a simple direct formula on a tiny sample:
    // with all hats known, Monte Carlo over the cube pins the value.
    const auto s3 = RankedSample::rank({0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 0, 1}, 4, 3);
    cbcop::RngStream mc(84007);
    const std::size_t draws = 400000;
    double acc = 0.0;
    const auto c3 = s3.empirical_checkerboard();
    std::vector<double> u(3);
    for (std::size_t i = 0; i < draws; ++i) {
        for (auto& x : u) x = mc.uniform();
        const double diff = c3.cdf(u) - u[0] * u[1] * u[2];
        acc += diff * diff;
    }
    acc = 4.0 * acc / double(draws);
    CHECK(cbcop::cvm_statistic(s3) == doctest::Approx(acc).epsilon(0.05));
}

TEST_CASE("statistics respect their ranges and rank invariance") {
    cbcop::RngStream rng(84008);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 30);
        const auto s = random_tied(n, 2, 4, rng);
        const double tau = cbcop::kendall_tau(s);
        const double rho = cbcop::spearman_rho(s);
        CHECK(tau >= -1.0);
        CHECK(tau <= 1.0);
        CHECK(rho >= -1.0);
        CHECK(rho <= 1.0);
        CHECK(cbcop::cvm_statistic(s) >= 0.0);

        // Strictly increasing transforms leave every statistic untouched.
        std::vector<double> cubed(n * 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                const double x = s.value(i, j);
                cubed[i * 2 + j] = x * x * x + 2.0 * x;
            }
        const auto s2 = RankedSample::rank(std::move(cubed), n, 2);
        CHECK(cbcop::kendall_tau(s2) == tau);
        CHECK(cbcop::spearman_rho(s2) == rho);
        CHECK(cbcop::cvm_statistic(s2) == cbcop::cvm_statistic(s));
    }
}
