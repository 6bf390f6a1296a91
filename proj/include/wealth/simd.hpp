#pragma once

// Reduction kernels behind every quadrature and the direct autoconvolution.
//
// Each kernel has a scalar reference implementation and, where the build
// target allows, vector variants (AVX2+FMA on x86-64, NEON on aarch64). The
// active table is chosen once at startup from CPU features and may be pinned
// with select_kernels() for reproducibility or testing. Results of a given
// table are bitwise deterministic; different tables agree to rounding.

#include <cstddef>
#include <span>
#include <string>

namespace wealth::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
    Isa isa;
    const char* name;
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i a[i] * b[i] * c[i]
    double (*dot3)(const double* a, const double* b, const double* c, std::size_t n);
    // sum_i w[i] * |a[i] - b[i]|
    double (*abs_diff_dot)(const double* w, const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled for this target.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

bool cpu_supports(Isa isa);

const KernelTable& active_kernels();

// Throws std::invalid_argument if the ISA is unavailable here.
void select_kernels(Isa isa);

// Picks the widest supported variant.
void select_best_kernels();

const char* to_string(Isa isa);
Isa isa_from_string(const std::string& name);

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active_kernels().dot(a.data(), b.data(), a.size());
}

inline double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
    return active_kernels().dot3(a.data(), b.data(), c.data(), a.size());
}

inline double abs_diff_dot(std::span<const double> w, std::span<const double> a,
                           std::span<const double> b) {
    return active_kernels().abs_diff_dot(w.data(), a.data(), b.data(), w.size());
}

}  // namespace wealth::simd
