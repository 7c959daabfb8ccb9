#pragma once

// Low-level array kernels used by the statistic and bootstrap code paths.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// implementation selected at runtime.  Both variants accumulate into four
// independent stripes (index i contributes to stripe i mod 4) and combine
// them as (s0 + s1) + (s2 + s3), with fp contraction disabled, so the two
// backends return bit-identical results.  Tests assert exact equality.

#include <cstddef>

namespace cbcop::kernels {

enum class Backend { scalar, avx2 };

// Backend currently in use.  Defaults to the best one the CPU supports.
Backend active_backend();

// True when the AVX2 variant was compiled in and the CPU supports it.
bool avx2_available();

// Force a specific backend (used by the equivalence tests).  Requesting
// avx2 on a machine without it throws std::runtime_error.
void set_backend(Backend b);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i x[i]
double sum(const double* x, std::size_t n);

// alpha^T G alpha for a dense row-major n x n matrix G.
double quad_form(const double* g, const double* alpha, std::size_t n);

// dst[i] = a[i] * b[i]
void hadamard(double* dst, const double* a, const double* b, std::size_t n);

// dst[i] *= a[i]
void hadamard_inplace(double* dst, const double* a, std::size_t n);

namespace detail {

struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    void (*hadamard)(double*, const double*, const double*, std::size_t);
    void (*hadamard_inplace)(double*, const double*, std::size_t);
};

extern const Ops scalar_ops;
#if CBCOP_HAVE_AVX2_TU
extern const Ops avx2_ops;
#endif

} // namespace detail

} // namespace cbcop::kernels
