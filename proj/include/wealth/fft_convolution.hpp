#pragma once

#include <span>
#include <vector>

namespace wealth::detail {

/// Full linear self-convolution s[k] = sum_i y[i] y[k - i], k = 0..2n-2,
/// through a zero-padded real FFT (FFTW, estimate-mode plans so the
/// transform is the same on every run).
std::vector<double> fft_self_convolution(std::span<const double> y);

}  // namespace wealth::detail
