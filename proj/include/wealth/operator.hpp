#pragma once

// The nonlinear wealth-exchange operator
//
//   (Ty)(x) = integral_{u+v>x} y(u) y(v) / (u + v) du dv
//           = integral_x^inf (y*y)(r) / r dr,
//
// evaluated through the autoconvolution (y*y)(r) = integral_0^r y(s) y(r-s) ds
// on the doubled domain [0, 2 x_max], followed by a right-to-left tail
// integral restricted back to [0, x_max].

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wealth/grid.hpp"

namespace wealth {

enum class ConvolutionMethod { direct, fft };

const char* to_string(ConvolutionMethod method);
ConvolutionMethod convolution_method_from_string(const std::string& name);

struct OperatorOptions {
    ConvolutionMethod method = ConvolutionMethod::fft;
    Quadrature quadrature = Quadrature::gregory;
};

/// (y*y)(r_k) on r_k = k * spacing, k = 0 .. 2(n-1).
struct Autoconvolution {
    double spacing = 0.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double radius(std::size_t k) const { return static_cast<double>(k) * spacing; }
};

Autoconvolution autoconvolve(const Density& y, ConvolutionMethod method,
                             Quadrature rule = Quadrature::gregory);

Density apply_T(const Density& y, const OperatorOptions& options = {});
Density apply_T(const Density& y, ConvolutionMethod method);

/// One row of an iteration trace. `step` 0 describes the initial condition.
struct IterationReport {
    std::size_t step = 0;
    double norm = 0.0;
    double mean = 0.0;
    double mass_defect = 0.0;
    double dist_to_target = 0.0;
    double step_delta = 0.0;
};

struct IterationOptions {
    OperatorOptions op;
    bool early_stop = false;
    double early_stop_delta = 1e-9;
    // Mass beyond x_max, relative to the current norm, that aborts a run.
    double max_relative_mass_defect = 1e-6;
    bool keep_states = false;
};

struct Trajectory {
    // reports[k] describes T^{k+1} y0.
    std::vector<IterationReport> reports;
    // y0, T y0, ... when keep_states is set.
    std::vector<Density> states;
    Density target;
    IterationReport initial;
};

/// Applies T up to n_steps times. The target is the exponential whose mean
/// equals the per-unit-mass mean of y0 (for a PDF, 1/rate = <y0>).
/// Throws DegenerateInput for a zero-norm start and TruncationError when
/// an iterate leaks mass past x_max.
Trajectory iterate_T(const Density& y0, std::size_t n_steps, const IterationOptions& options = {});

/// ybar(p) = integral_0^{x_max} e^{ipx} y(x) dx.
std::vector<std::complex<double>> characteristic_function(const Density& y, std::span<const double> p_values,
                                                          Quadrature rule = Quadrature::gregory);

inline constexpr double kOdeResidualStep = 1e-3;

/// |ybar + p ybar' - ybar^2| at each p (p != 0), ybar' by central differences
/// of width `step`. Vanishes for fixed points of T.
std::vector<double> fixed_point_ode_residual(const Density& y, std::span<const double> p_values,
                                             double step = kOdeResidualStep,
                                             Quadrature rule = Quadrature::gregory);

}  // namespace wealth
