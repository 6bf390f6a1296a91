#include <cmath>

#include "kernels_internal.hpp"

namespace wealth::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_scalar(const double* a, const double* b, const double* c, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

double abs_diff_dot_scalar(const double* w, const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::fabs(a[i] - b[i]);
    return s;
}

}  // namespace

const KernelTable kScalarTable{Isa::scalar, "scalar", dot_scalar, dot3_scalar, abs_diff_dot_scalar};

}  // namespace wealth::simd::detail
