#include <arm_neon.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace wealth::simd::detail {
namespace {

inline double fold(float64x2_t acc0, float64x2_t acc1) {
    return vaddvq_f64(vaddq_f64(acc0, acc1));
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = fold(acc0, acc1);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_neon(const double* a, const double* b, const double* c, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)), vld1q_f64(c + i));
        acc1 = vfmaq_f64(acc1, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)), vld1q_f64(c + i + 2));
    }
    double s = fold(acc0, acc1);
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

double abs_diff_dot_neon(const double* w, const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(w + i), vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        acc1 = vfmaq_f64(acc1, vld1q_f64(w + i + 2), vabdq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double s = fold(acc0, acc1);
    for (; i < n; ++i) s += w[i] * std::fabs(a[i] - b[i]);
    return s;
}

}  // namespace

const KernelTable kNeonTable{Isa::neon, "neon", dot_neon, dot3_neon, abs_diff_dot_neon};

}  // namespace wealth::simd::detail
