#include "wealth/fft_convolution.hpp"

#include <fftw3.h>

#include <bit>
#include <complex>
#include <memory>
#include <mutex>

namespace wealth::detail {
namespace {

// Planner calls are not thread-safe in FFTW; execution with the new-array
// interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

struct PlanDestroy {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDestroy>;

}  // namespace

std::vector<double> fft_self_convolution(std::span<const double> y) {
    const std::size_t n = y.size();
    if (n == 0) return {};
    const std::size_t out_len = 2 * n - 1;
    const std::size_t len = std::bit_ceil(out_len);
    const std::size_t spectrum_len = len / 2 + 1;

    std::unique_ptr<double, FftwFree> real(static_cast<double*>(fftw_malloc(sizeof(double) * len)));
    std::unique_ptr<fftw_complex, FftwFree> spec(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * spectrum_len)));

    PlanPtr forward;
    PlanPtr backward;
    {
        std::lock_guard lock(planner_mutex());
        const int ilen = static_cast<int>(len);
        forward.reset(fftw_plan_dft_r2c_1d(ilen, real.get(), spec.get(), FFTW_ESTIMATE));
        backward.reset(fftw_plan_dft_c2r_1d(ilen, spec.get(), real.get(), FFTW_ESTIMATE));
    }

    double* r = real.get();
    for (std::size_t i = 0; i < n; ++i) r[i] = y[i];
    for (std::size_t i = n; i < len; ++i) r[i] = 0.0;

    fftw_execute(forward.get());
    auto* z = reinterpret_cast<std::complex<double>*>(spec.get());
    for (std::size_t k = 0; k < spectrum_len; ++k) z[k] *= z[k];
    fftw_execute(backward.get());

    std::vector<double> out(out_len);
    const double inv = 1.0 / static_cast<double>(len);
    for (std::size_t k = 0; k < out_len; ++k) out[k] = r[k] * inv;
    return out;
}

}  // namespace wealth::detail
