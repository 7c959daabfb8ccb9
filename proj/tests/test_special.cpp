#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cbcop/special.hpp"

// Reference values computed with mpmath at 40 significant digits and frozen
// here; tolerances reflect the implementation's stated error budgets.

TEST_CASE("normal cdf against high-precision references") {
    using cbcop::normal_cdf;
    struct Ref { double x, phi; };
    const Ref refs[] = {
        {-8.0, 6.22096057427178412352e-16},
        {-6.5, 4.01600058385911780835e-11},
        {-2.5, 0.00620966532577613516698},
        {-1.0, 0.158655253931457051415},
        {-0.3, 0.382088577811047362693},
        {0.0, 0.5},
        {0.3, 0.617911422188952637307},
        {1.0, 0.841344746068542948585},
        {2.5, 0.993790334674223864833},
        {6.5, 0.999999999959839994161},
    };
    for (const auto& r : refs) {
        CHECK(normal_cdf(r.x) == doctest::Approx(r.phi).epsilon(2e-14));
        // Symmetry of the implementation itself.
        CHECK(normal_cdf(r.x) + normal_cdf(-r.x) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(normal_cdf(40.0) == 1.0);
    CHECK(normal_cdf(-40.0) == 0.0);
}

TEST_CASE("normal quantile against high-precision references") {
    using cbcop::normal_quantile;
    struct Ref { double u, x; };
    const Ref refs[] = {
        {1e-9, -5.99780701500768687156},
        {1e-6, -4.75342430882289894819},
        {0.02, -2.05374891063182305294},   // just below the central-region break
        {0.3, -0.524400512708040784038},
        {0.5, 0.0},
        {0.7, 0.524400512708040784038},
        {0.9, 1.28155156554460046697},
        {0.975, 1.95996398454005423552},
    };
    for (const auto& r : refs)
        CHECK(normal_quantile(r.u) == doctest::Approx(r.x).epsilon(1e-13));
    // Reference computed at the exact binary value of 1.0 - 1e-6 (the
    // quantile's slope ~7e5 there makes the decimal-vs-double gap visible).
    CHECK(normal_quantile(1.0 - 1e-6) == doctest::Approx(4.75342430881708776569).epsilon(1e-13));
}

TEST_CASE("quantile inverts the cdf across the unit interval") {
    for (int i = 1; i < 400; ++i) {
        const double u = static_cast<double>(i) / 400.0;
        const double x = cbcop::normal_quantile(u);
        CHECK(cbcop::normal_cdf(x) == doctest::Approx(u).epsilon(1e-11));
    }
    // Deep tails.
    for (double u : {1e-8, 1e-5, 1.0 - 1e-5, 1.0 - 1e-8}) {
        const double x = cbcop::normal_quantile(u);
        CHECK(cbcop::normal_cdf(x) == doctest::Approx(u).epsilon(1e-9));
    }
}

TEST_CASE("normal quantile rejects endpoints") {
    CHECK_THROWS_AS(cbcop::normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(cbcop::normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(cbcop::normal_quantile(-0.5), std::domain_error);
}

TEST_CASE("regularized upper incomplete gamma") {
    using cbcop::gamma_q;
    // Spans the series branch (x < a + 1) and the continued-fraction branch.
    CHECK(gamma_q(0.5, 0.5) == doctest::Approx(0.31731050786291410283).epsilon(1e-12));
    CHECK(gamma_q(4.0, 10.0) == doctest::Approx(0.0103360506759257178663).epsilon(1e-12));
    CHECK(gamma_q(9.0, 2.0) == doctest::Approx(0.999762552671738838214).epsilon(1e-12));
    CHECK(gamma_q(50.0, 67.5) == doctest::Approx(0.011314284906802268312).epsilon(1e-12));
    CHECK(gamma_q(0.5, 26.3) == doctest::Approx(4.08889219792765185923e-13).epsilon(1e-11));
    CHECK(gamma_q(1.0, 2.995) == doctest::Approx(0.0500366270865862825159).epsilon(1e-12));
    CHECK(gamma_q(3.0, 0.0) == 1.0);
    CHECK_THROWS_AS(gamma_q(-1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(gamma_q(1.0, -2.0), std::domain_error);
}

TEST_CASE("chi-squared survival function") {
    using cbcop::chi_squared_survival;
    CHECK(chi_squared_survival(1, 2.0) == doctest::Approx(0.157299207050285130659).epsilon(1e-12));
    CHECK(chi_squared_survival(1, 0.5) == doctest::Approx(0.479500122186953462317).epsilon(1e-12));
    CHECK(chi_squared_survival(4, 10.0) == doctest::Approx(0.0404276819945128025798).epsilon(1e-12));
    CHECK(chi_squared_survival(2, 4.0) == doctest::Approx(0.135335283236612691894).epsilon(1e-12));
    // 0.95 quantiles: the survival function must hit 0.05 almost exactly.
    CHECK(chi_squared_survival(9, 16.918977604620448) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(chi_squared_survival(100, 124.34211340510167) == doctest::Approx(0.05).epsilon(1e-9));
}
