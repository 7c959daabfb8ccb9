// AVX2 kernels.  One 256-bit register carries the four accumulation stripes;
// the remainder loop continues the stripe pattern in scalar code so that the
// result is bit-identical to the scalar backend.  Compiled with -mavx2 and
// -ffp-contract=off; only ever dispatched to after a cpuid check.

#include "cbcop/kernels.hpp"

#include <immintrin.h>

namespace cbcop::kernels::detail {

namespace {

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n4 = n & ~std::size_t{3};
    for (; i < n4; i += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, prod);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (std::size_t l = 0; i < n; ++i, ++l)
        lane[l] += a[i] * b[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n4 = n & ~std::size_t{3};
    for (; i < n4; i += 4)
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (std::size_t l = 0; i < n; ++i, ++l)
        lane[l] += x[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void hadamard_avx2(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    const std::size_t n4 = n & ~std::size_t{3};
    for (; i < n4; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i)
        dst[i] = a[i] * b[i];
}

void hadamard_inplace_avx2(double* dst, const double* a, std::size_t n) {
    std::size_t i = 0;
    const std::size_t n4 = n & ~std::size_t{3};
    for (; i < n4; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(dst + i), _mm256_loadu_pd(a + i)));
    for (; i < n; ++i)
        dst[i] *= a[i];
}

} // namespace

const Ops avx2_ops = {dot_avx2, sum_avx2, hadamard_avx2, hadamard_inplace_avx2};

} // namespace cbcop::kernels::detail
