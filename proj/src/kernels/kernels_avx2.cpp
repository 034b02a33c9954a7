#include "molent/kernels.hpp"

#if MOLENT_HAVE_AVX2_KERNELS

#include <immintrin.h>

#define MOLENT_AVX2 __attribute__((target("avx2")))

namespace molent::kernels::avx2 {

MOLENT_AVX2 void matvec(const double* a, const double* x, double* y, std::size_t n) {
    const std::size_t blocks = n / 4;
    __m256d acc[kMaxLen / 4];
    for (std::size_t b = 0; b < blocks; ++b) acc[b] = _mm256_setzero_pd();
    for (std::size_t j = 0; j < n; ++j) {
        const __m256d xj = _mm256_set1_pd(x[j]);
        const double* col = a + j * n;
        for (std::size_t b = 0; b < blocks; ++b) {
            acc[b] = _mm256_add_pd(acc[b], _mm256_mul_pd(_mm256_loadu_pd(col + 4 * b), xj));
        }
    }
    for (std::size_t b = 0; b < blocks; ++b) _mm256_storeu_pd(y + 4 * b, acc[b]);
}

MOLENT_AVX2 void combine(double* out, const double* base, const double* coeff,
                         const double* const* stages, std::size_t n_stages, std::size_t n) {
    for (std::size_t i = 0; i < n; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < n_stages; ++k) {
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(coeff[k]), _mm256_loadu_pd(stages[k] + i)));
        }
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(base + i), acc));
    }
}

MOLENT_AVX2 double scaled_error_sq(const double* err, const double* y0, const double* y1,
                                   double atol, double rtol, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    const __m256d va = _mm256_set1_pd(atol);
    const __m256d vr = _mm256_set1_pd(rtol);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; i += 4) {
        const __m256d a0 = _mm256_andnot_pd(sign, _mm256_loadu_pd(y0 + i));
        const __m256d a1 = _mm256_andnot_pd(sign, _mm256_loadu_pd(y1 + i));
        // max(a0, a1) picking a0 on ties, as std::max does.
        const __m256d m = _mm256_blendv_pd(a0, a1, _mm256_cmp_pd(a0, a1, _CMP_LT_OQ));
        const __m256d sk = _mm256_add_pd(va, _mm256_mul_pd(vr, m));
        const __m256d q = _mm256_div_pd(_mm256_loadu_pd(err + i), sk);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(q, q));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace molent::kernels::avx2

#endif
