// Scalar reference kernels.  The striped accumulation pattern mirrors the
// 4-lane vector registers of the AVX2 variant exactly; see kernels.hpp.

#include "cbcop/kernels.hpp"

namespace cbcop::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    const std::size_t n4 = n & ~std::size_t{3};
    for (; i < n4; i += 4) {
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    for (std::size_t lane = 0; i < n; ++i, ++lane)
        acc[lane] += a[i] * b[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double sum_scalar(const double* x, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    const std::size_t n4 = n & ~std::size_t{3};
    for (; i < n4; i += 4) {
        acc[0] += x[i];
        acc[1] += x[i + 1];
        acc[2] += x[i + 2];
        acc[3] += x[i + 3];
    }
    for (std::size_t lane = 0; i < n; ++i, ++lane)
        acc[lane] += x[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void hadamard_scalar(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = a[i] * b[i];
}

void hadamard_inplace_scalar(double* dst, const double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] *= a[i];
}

} // namespace

const Ops scalar_ops = {dot_scalar, sum_scalar, hadamard_scalar, hadamard_inplace_scalar};

} // namespace cbcop::kernels::detail
