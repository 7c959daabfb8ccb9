#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cbcop/kernels.hpp"
#include "cbcop/rng.hpp"

namespace {

std::vector<double> random_vec(std::size_t n, cbcop::RngStream& rng) {
    std::vector<double> v(n);
    for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
    return v;
}

// Naive reference accumulated in extended precision.
double naive_dot(const std::vector<double>& a, const std::vector<double>& b) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<long double>(a[i]) * b[i];
    return static_cast<double>(acc);
}

struct BackendGuard {
    cbcop::kernels::Backend saved = cbcop::kernels::active_backend();
    ~BackendGuard() { cbcop::kernels::set_backend(saved); }
};

} // namespace

TEST_CASE("dot and sum match a high-precision reference") {
    cbcop::RngStream rng(77001);
    for (std::size_t n : {1u, 2u, 7u, 64u, 1000u}) {
        auto a = random_vec(n, rng);
        auto b = random_vec(n, rng);
        const double d = cbcop::kernels::dot(a.data(), b.data(), n);
        CHECK(d == doctest::Approx(naive_dot(a, b)).epsilon(1e-13));
        std::vector<double> ones(n, 1.0);
        CHECK(cbcop::kernels::sum(a.data(), n) ==
              doctest::Approx(naive_dot(a, ones)).epsilon(1e-13));
    }
}

TEST_CASE("quad_form equals the unrolled double loop") {
    cbcop::RngStream rng(77002);
    const std::size_t n = 23;
    auto g = random_vec(n * n, rng);
    // Symmetrize so the quadratic form is well-posed.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) {
            const double m = 0.5 * (g[i * n + k] + g[k * n + i]);
            g[i * n + k] = g[k * n + i] = m;
        }
    auto x = random_vec(n, rng);
    long double ref = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            ref += static_cast<long double>(x[i]) * g[i * n + k] * x[k];
    const double got = cbcop::kernels::quad_form(g.data(), x.data(), n);
    CHECK(got == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("hadamard writes the elementwise product") {
    std::vector<double> a{1.0, -2.0, 3.0, 0.5, 4.0};
    std::vector<double> b{2.0, 0.25, -1.0, 8.0, 0.0};
    std::vector<double> out(a.size(), -99.0);
    cbcop::kernels::hadamard(out.data(), a.data(), b.data(), a.size());
    const std::vector<double> want{2.0, -0.5, -3.0, 4.0, 0.0};
    CHECK(out == want);
    cbcop::kernels::hadamard_inplace(a.data(), b.data(), a.size());
    CHECK(a == want);
}

TEST_CASE("avx2 backend is bit-identical to scalar") {
    if (!cbcop::kernels::avx2_available()) {
        MESSAGE("avx2 not available on this host; equivalence checked elsewhere");
        return;
    }
    BackendGuard guard;
    cbcop::RngStream rng(77003);
    // Sizes straddle the vector width so every remainder path is exercised.
    for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 13u, 16u, 31u, 257u}) {
        auto a = random_vec(n, rng);
        auto b = random_vec(n, rng);

        cbcop::kernels::set_backend(cbcop::kernels::Backend::scalar);
        const double dot_s = cbcop::kernels::dot(a.data(), b.data(), n);
        const double sum_s = cbcop::kernels::sum(a.data(), n);
        std::vector<double> had_s(n);
        cbcop::kernels::hadamard(had_s.data(), a.data(), b.data(), n);

        cbcop::kernels::set_backend(cbcop::kernels::Backend::avx2);
        const double dot_v = cbcop::kernels::dot(a.data(), b.data(), n);
        const double sum_v = cbcop::kernels::sum(a.data(), n);
        std::vector<double> had_v(n);
        cbcop::kernels::hadamard(had_v.data(), a.data(), b.data(), n);

        CHECK(dot_s == dot_v);
        CHECK(sum_s == sum_v);
        CHECK(had_s == had_v);
    }

    // Quadratic form, including a non-multiple-of-4 edge.
    for (std::size_t n : {6u, 16u, 33u}) {
        auto g = random_vec(n * n, rng);
        auto x = random_vec(n, rng);
        cbcop::kernels::set_backend(cbcop::kernels::Backend::scalar);
        const double q_s = cbcop::kernels::quad_form(g.data(), x.data(), n);
        cbcop::kernels::set_backend(cbcop::kernels::Backend::avx2);
        const double q_v = cbcop::kernels::quad_form(g.data(), x.data(), n);
        CHECK(q_s == q_v);
    }
}

TEST_CASE("set_backend rejects avx2 when unsupported") {
    if (cbcop::kernels::avx2_available()) return;
    CHECK_THROWS_AS(cbcop::kernels::set_backend(cbcop::kernels::Backend::avx2),
                    std::runtime_error);
}
