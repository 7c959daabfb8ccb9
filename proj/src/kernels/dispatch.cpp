#include "cbcop/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace cbcop::kernels {

namespace {

bool detect_avx2() {
#if CBCOP_HAVE_AVX2_TU && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const detail::Ops* ops_for(Backend b) {
#if CBCOP_HAVE_AVX2_TU
    if (b == Backend::avx2)
        return &detail::avx2_ops;
#else
    (void)b;
#endif
    return &detail::scalar_ops;
}

std::atomic<const detail::Ops*> g_ops{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const detail::Ops* ops() {
    const detail::Ops* p = g_ops.load(std::memory_order_acquire);
    if (!p) {
        const Backend b = detect_avx2() ? Backend::avx2 : Backend::scalar;
        g_backend.store(b, std::memory_order_relaxed);
        p = ops_for(b);
        g_ops.store(p, std::memory_order_release);
    }
    return p;
}

} // namespace

bool avx2_available() { return detect_avx2(); }

Backend active_backend() {
    ops();
    return g_backend.load(std::memory_order_relaxed);
}

void set_backend(Backend b) {
    if (b == Backend::avx2 && !detect_avx2())
        throw std::runtime_error("avx2 backend requested but not available on this cpu");
    g_backend.store(b, std::memory_order_relaxed);
    g_ops.store(ops_for(b), std::memory_order_release);
}

double dot(const double* a, const double* b, std::size_t n) { return ops()->dot(a, b, n); }

double sum(const double* x, std::size_t n) { return ops()->sum(x, n); }

void hadamard(double* dst, const double* a, const double* b, std::size_t n) {
    ops()->hadamard(dst, a, b, n);
}

void hadamard_inplace(double* dst, const double* a, std::size_t n) {
    ops()->hadamard_inplace(dst, a, n);
}

double quad_form(const double* g, const double* alpha, std::size_t n) {
    // Row-by-row: alpha^T G alpha = sum_i alpha_i * <G_i, alpha>.  The outer
    // accumulation is sequential in both backends, the inner dot dispatches.
    const detail::Ops* k = ops();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        total += alpha[i] * k->dot(g + i * n, alpha, n);
    return total;
}

} // namespace cbcop::kernels
