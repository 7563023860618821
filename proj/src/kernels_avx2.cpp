#include <immintrin.h>

#include "smq/kernels.hpp"

namespace smq::kernels {

namespace {

// Lanes hold (re, im, re, im); even lanes sum to the real part, odd lanes to the imaginary part.
inline CDouble hsum_complex(__m256d v) {
    const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
    return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

}  // namespace

CDouble cdot_avx2(const CDouble* a, const CDouble* b, std::size_t n) {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    // rr accumulates (ar·br, ar·bi), ii accumulates (ai·bi, ai·br).
    __m256d rr0 = _mm256_setzero_pd(), ii0 = _mm256_setzero_pd();
    __m256d rr1 = _mm256_setzero_pd(), ii1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d va0 = _mm256_loadu_pd(pa + 2 * k);
        const __m256d vb0 = _mm256_loadu_pd(pb + 2 * k);
        const __m256d va1 = _mm256_loadu_pd(pa + 2 * k + 4);
        const __m256d vb1 = _mm256_loadu_pd(pb + 2 * k + 4);
        rr0 = _mm256_fmadd_pd(_mm256_movedup_pd(va0), vb0, rr0);
        ii0 = _mm256_fmadd_pd(_mm256_permute_pd(va0, 0xF), _mm256_permute_pd(vb0, 0x5), ii0);
        rr1 = _mm256_fmadd_pd(_mm256_movedup_pd(va1), vb1, rr1);
        ii1 = _mm256_fmadd_pd(_mm256_permute_pd(va1, 0xF), _mm256_permute_pd(vb1, 0x5), ii1);
    }
    for (; k + 2 <= n; k += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * k);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * k);
        rr0 = _mm256_fmadd_pd(_mm256_movedup_pd(va), vb, rr0);
        ii0 = _mm256_fmadd_pd(_mm256_permute_pd(va, 0xF), _mm256_permute_pd(vb, 0x5), ii0);
    }
    const CDouble r = hsum_complex(_mm256_add_pd(rr0, rr1));
    const CDouble i = hsum_complex(_mm256_add_pd(ii0, ii1));
    CDouble out(r.real() - i.real(), r.imag() + i.imag());
    for (; k < n; ++k) out += a[k] * b[k];
    return out;
}

CDouble weighted_sum_avx2(const double* w, const CDouble* f, std::size_t n) {
    const auto* pf = reinterpret_cast<const double*>(f);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        // (w0, w0, w1, w1) and (w2, w2, w3, w3).
        const __m256d wv = _mm256_loadu_pd(w + k);
        const __m256d w01 = _mm256_permute4x64_pd(wv, 0x50);
        const __m256d w23 = _mm256_permute4x64_pd(wv, 0xFA);
        acc0 = _mm256_fmadd_pd(w01, _mm256_loadu_pd(pf + 2 * k), acc0);
        acc1 = _mm256_fmadd_pd(w23, _mm256_loadu_pd(pf + 2 * k + 4), acc1);
    }
    CDouble out = hsum_complex(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) out += w[k] * f[k];
    return out;
}

}  // namespace smq::kernels
