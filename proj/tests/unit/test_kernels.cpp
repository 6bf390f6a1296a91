#include <stdexcept>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "wealth/simd.hpp"

using namespace wealth::simd;

namespace {

std::vector<const KernelTable*> available() {
    std::vector<const KernelTable*> out{&scalar_kernels()};
    if (avx2_kernels() && cpu_supports(Isa::avx2)) out.push_back(avx2_kernels());
    if (neon_kernels() && cpu_supports(Isa::neon)) out.push_back(neon_kernels());
    return out;
}

// Sum of |terms| bounds the rounding error of any summation order.
double tolerance(double abs_sum, std::size_t n) { return 4.0 * static_cast<double>(n + 8) * 0x1p-53 * abs_sum; }

}  // namespace

TEST_SUITE("kernels") {
    TEST_CASE("vector variants match the scalar reference") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const auto tables = available();
        for (std::size_t n = 0; n < 300; n += (n < 40 ? 1 : 37)) {
            std::vector<double> a(n), b(n), c(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = u(rng);
                b[i] = u(rng);
                c[i] = std::abs(u(rng));
            }
            double abs_dot = 0.0, abs_dot3 = 0.0, abs_l1 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                abs_dot += std::abs(a[i] * b[i]);
                abs_dot3 += std::abs(a[i] * b[i] * c[i]);
                abs_l1 += c[i] * std::abs(a[i] - b[i]);
            }
            const auto& ref = scalar_kernels();
            for (const auto* t : tables) {
                CAPTURE(t->name);
                CAPTURE(n);
                CHECK(std::abs(t->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= tolerance(abs_dot, n));
                CHECK(std::abs(t->dot3(a.data(), b.data(), c.data(), n) - ref.dot3(a.data(), b.data(), c.data(), n)) <=
                      tolerance(abs_dot3, n));
                CHECK(std::abs(t->abs_diff_dot(c.data(), a.data(), b.data(), n) -
                               ref.abs_diff_dot(c.data(), a.data(), b.data(), n)) <= tolerance(abs_l1, n));
            }
        }
    }

    TEST_CASE("unaligned views give the same answers") {
        std::vector<double> a(1031), b(1031);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = std::sin(0.1 * static_cast<double>(i));
            b[i] = std::cos(0.07 * static_cast<double>(i));
        }
        for (const auto* t : available()) {
            for (std::size_t off = 0; off < 4; ++off) {
                const double got = t->dot(a.data() + off, b.data() + off, 1000);
                const double ref = scalar_kernels().dot(a.data() + off, b.data() + off, 1000);
                CHECK(got == doctest::Approx(ref).epsilon(1e-13));
            }
        }
    }

    TEST_CASE("each table is deterministic") {
        std::vector<double> a(4097), b(4097);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = 1.0 / (1.0 + static_cast<double>(i));
            b[i] = std::exp(-0.001 * static_cast<double>(i));
        }
        for (const auto* t : available()) CHECK(t->dot(a.data(), b.data(), a.size()) == t->dot(a.data(), b.data(), a.size()));
    }

    TEST_CASE("selection") {
        select_kernels(Isa::scalar);
        CHECK(active_kernels().isa == Isa::scalar);
        select_best_kernels();
        CHECK(cpu_supports(active_kernels().isa));
        for (auto isa : {Isa::scalar, Isa::avx2, Isa::neon}) CHECK(isa_from_string(to_string(isa)) == isa);
        CHECK_THROWS_AS(isa_from_string("sse9"), std::invalid_argument);
        if (!cpu_supports(Isa::neon)) CHECK_THROWS_AS(select_kernels(Isa::neon), std::invalid_argument);
        select_best_kernels();
    }
}
