#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace wealth::simd::detail {
namespace {

// Two 4-lane accumulators; lanes are folded in a fixed order so the result
// only depends on n and the inputs.
inline double fold(__m256d acc0, __m256d acc1) {
    __m256d acc = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d pair = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(pair, pair);
    return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        i += 4;
    }
    double s = fold(acc0, acc1);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_avx2(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d ab0 = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        __m256d ab1 = _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(ab0, _mm256_loadu_pd(c + i), acc0);
        acc1 = _mm256_fmadd_pd(ab1, _mm256_loadu_pd(c + i + 4), acc1);
    }
    if (i + 4 <= n) {
        __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc0);
        i += 4;
    }
    double s = fold(acc0, acc1);
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

double abs_diff_dot_avx2(const double* w, const double* a, const double* b, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        d0 = _mm256_andnot_pd(sign_mask, d0);
        d1 = _mm256_andnot_pd(sign_mask, d1);
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), d0, acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4), d1, acc1);
    }
    if (i + 4 <= n) {
        __m256d d = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), d, acc0);
        i += 4;
    }
    double s = fold(acc0, acc1);
    for (; i < n; ++i) s += w[i] * std::fabs(a[i] - b[i]);
    return s;
}

}  // namespace

const KernelTable kAvx2Table{Isa::avx2, "avx2", dot_avx2, dot3_avx2, abs_diff_dot_avx2};

}  // namespace wealth::simd::detail
