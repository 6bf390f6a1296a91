#include <atomic>
#include <stdexcept>

#include "kernels_internal.hpp"

namespace wealth::simd {
namespace {

const KernelTable* best_available() {
    if (const KernelTable* t = avx2_kernels(); t != nullptr && cpu_supports(Isa::avx2)) return t;
    if (const KernelTable* t = neon_kernels(); t != nullptr && cpu_supports(Isa::neon)) return t;
    return &detail::kScalarTable;
}

std::atomic<const KernelTable*>& active_slot() {
    static std::atomic<const KernelTable*> slot{best_available()};
    return slot;
}

}  // namespace

const KernelTable& scalar_kernels() { return detail::kScalarTable; }

const KernelTable* avx2_kernels() {
#if defined(WEALTHOP_HAVE_AVX2)
    return &detail::kAvx2Table;
#else
    return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(WEALTHOP_HAVE_NEON)
    return &detail::kNeonTable;
#else
    return nullptr;
#endif
}

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(WEALTHOP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(WEALTHOP_HAVE_NEON)
            return true;  // mandatory on aarch64
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

void select_kernels(Isa isa) {
    const KernelTable* table = nullptr;
    switch (isa) {
        case Isa::scalar: table = &detail::kScalarTable; break;
        case Isa::avx2: table = avx2_kernels(); break;
        case Isa::neon: table = neon_kernels(); break;
    }
    if (table == nullptr || !cpu_supports(isa)) {
        throw std::invalid_argument(std::string("kernel variant not available: ") + to_string(isa));
    }
    active_slot().store(table, std::memory_order_release);
}

void select_best_kernels() { active_slot().store(best_available(), std::memory_order_release); }

const char* to_string(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

Isa isa_from_string(const std::string& name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "neon") return Isa::neon;
    throw std::invalid_argument("unknown kernel variant: " + name);
}

}  // namespace wealth::simd
