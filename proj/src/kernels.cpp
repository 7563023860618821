#include "smq/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace smq {

namespace kernels {

// Four independent accumulators so the scalar loop pipelines like the vector one.
CDouble cdot_scalar(const CDouble* a, const CDouble* b, std::size_t n) {
    double re[4] = {0, 0, 0, 0};
    double im[4] = {0, 0, 0, 0};
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        for (std::size_t j = 0; j < 4; ++j) {
            const double ar = a[k + j].real(), ai = a[k + j].imag();
            const double br = b[k + j].real(), bi = b[k + j].imag();
            re[j] += ar * br - ai * bi;
            im[j] += ar * bi + ai * br;
        }
    for (; k < n; ++k) {
        re[0] += a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
        im[0] += a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
    }
    return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

CDouble weighted_sum_scalar(const double* w, const CDouble* f, std::size_t n) {
    double re[4] = {0, 0, 0, 0};
    double im[4] = {0, 0, 0, 0};
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        for (std::size_t j = 0; j < 4; ++j) {
            re[j] += w[k + j] * f[k + j].real();
            im[j] += w[k + j] * f[k + j].imag();
        }
    for (; k < n; ++k) {
        re[0] += w[k] * f[k].real();
        im[0] += w[k] * f[k].imag();
    }
    return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

}  // namespace kernels

namespace {

bool detect_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<KernelIsa>& isa_setting() {
    static std::atomic<KernelIsa> isa{detect_avx2() ? KernelIsa::avx2 : KernelIsa::scalar};
    return isa;
}

}  // namespace

bool avx2_supported() {
    static const bool supported = detect_avx2();
    return supported;
}

void set_kernel_isa(KernelIsa isa) {
    if (isa == KernelIsa::automatic) isa = avx2_supported() ? KernelIsa::avx2 : KernelIsa::scalar;
    if (isa == KernelIsa::avx2 && !avx2_supported()) throw std::runtime_error("AVX2/FMA not supported on this CPU");
    isa_setting().store(isa);
}

KernelIsa active_kernel_isa() { return isa_setting().load(); }

std::string to_string(KernelIsa isa) {
    switch (isa) {
        case KernelIsa::automatic: return "automatic";
        case KernelIsa::scalar: return "scalar";
        case KernelIsa::avx2: return "avx2";
    }
    return "unknown";
}

CDouble cdot(const CDouble* a, const CDouble* b, std::size_t n) {
    return active_kernel_isa() == KernelIsa::avx2 ? kernels::cdot_avx2(a, b, n) : kernels::cdot_scalar(a, b, n);
}

CDouble weighted_sum(const double* w, const CDouble* f, std::size_t n) {
    return active_kernel_isa() == KernelIsa::avx2 ? kernels::weighted_sum_avx2(w, f, n) : kernels::weighted_sum_scalar(w, f, n);
}

void cgemv(const CDouble* M, const CDouble* v, CDouble* y, std::size_t rows, std::size_t cols) {
    const bool vec = active_kernel_isa() == KernelIsa::avx2;
    for (std::size_t r = 0; r < rows; ++r)
        y[r] = vec ? kernels::cdot_avx2(M + r * cols, v, cols) : kernels::cdot_scalar(M + r * cols, v, cols);
}

}  // namespace smq
