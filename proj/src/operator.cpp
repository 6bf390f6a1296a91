#include "wealth/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wealth/families.hpp"
#include "wealth/fft_convolution.hpp"
#include "wealth/simd.hpp"

namespace wealth {
namespace {

// s[k] = sum_i y[i] y[k-i] as a contiguous dot product against the reversed
// samples, so every output element reuses the vector dot kernel.
std::vector<double> direct_self_convolution(std::span<const double> y) {
    const std::size_t n = y.size();
    std::vector<double> reversed(y.rbegin(), y.rend());
    std::vector<double> out(2 * n - 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t lo = k >= n ? k - (n - 1) : 0;
        const std::size_t hi = std::min(k, n - 1);
        const std::size_t len = hi - lo + 1;
        // y[k - i] == reversed[n - 1 - k + i]
        out[k] = simd::dot(y.subspan(lo, len), std::span<const double>(reversed).subspan(n - 1 - k + lo, len));
    }
    return out;
}

}  // namespace

const char* to_string(ConvolutionMethod method) {
    return method == ConvolutionMethod::fft ? "fft" : "direct";
}

ConvolutionMethod convolution_method_from_string(const std::string& name) {
    if (name == "fft") return ConvolutionMethod::fft;
    if (name == "direct") return ConvolutionMethod::direct;
    throw std::invalid_argument("unknown convolution method: " + name);
}

Autoconvolution autoconvolve(const Density& y, ConvolutionMethod method, Quadrature rule) {
    const std::size_t n = y.size();
    const double h = y.grid().spacing();
    const auto v = y.values();
    auto at = [&](std::size_t j) { return j < n ? v[j] : 0.0; };

    std::vector<double> sums =
        method == ConvolutionMethod::fft ? detail::fft_self_convolution(v) : direct_self_convolution(v);

    Autoconvolution out;
    out.spacing = h;
    out.values.resize(sums.size());
    out.values[0] = 0.0;

    const auto deficits = endpoint_deficits(rule);
    const std::size_t corrected_from = min_corrected_intervals(rule);
    for (std::size_t k = 1; k < sums.size(); ++k) {
        double c;
        if (k < corrected_from) {
            // Too few intervals for end corrections: explicit short rule.
            const auto w = unit_weights(k, rule);
            c = 0.0;
            for (std::size_t i = 0; i <= k; ++i) c += w[i] * v[i] * v[k - i];
        } else {
            c = sums[k];
            for (std::size_t m = 0; m < deficits.size(); ++m) c -= 2.0 * deficits[m] * at(m) * at(k - m);
        }
        out.values[k] = std::max(0.0, h * c);
    }
    return out;
}

Density apply_T(const Density& y, const OperatorOptions& options) {
    const Autoconvolution conv = autoconvolve(y, options.method, options.quadrature);
    const std::size_t n = y.size();
    const std::size_t last = conv.size() - 1;
    const double h = conv.spacing;

    // Integrand g(r) = (y*y)(r) / r, with g(0) = y(0)^2.
    std::vector<double> g(conv.size());
    g[0] = y[0] * y[0];
    for (std::size_t k = 1; k < g.size(); ++k) g[k] = conv.values[k] / conv.radius(k);
    if (options.quadrature == Quadrature::gregory) {
        // (y*y)(h) only sees a two-point rule; take g(h) from the quintic
        // through g(0), g(2h), ..., g(6h) instead.
        g[1] = std::max(0.0, (g[0] + g[6]) / 6.0 + 2.5 * (g[2] + g[4]) - 10.0 / 3.0 * g[3] - g[5]);
    }

    std::vector<double> suffix(g.size());
    double running = 0.0;
    for (std::size_t k = g.size(); k-- > 0;) {
        running += g[k];
        suffix[k] = running;
    }

    const auto deficits = endpoint_deficits(options.quadrature);
    const std::size_t min_intervals = min_corrected_intervals(options.quadrature);
    double tail_correction = 0.0;
    for (std::size_t m = 0; m < deficits.size(); ++m) tail_correction += deficits[m] * g[last - m];

    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t;
        if (last - j >= min_intervals) {
            double s = suffix[j] - tail_correction;
            for (std::size_t m = 0; m < deficits.size(); ++m) s -= deficits[m] * g[j + m];
            t = h * s;
        } else {
            t = integrate_uniform(std::span<const double>(g).subspan(j), h, options.quadrature);
        }
        out[j] = std::max(0.0, t);
    }
    return Density(y.grid(), std::move(out));
}

Density apply_T(const Density& y, ConvolutionMethod method) {
    return apply_T(y, OperatorOptions{method, Quadrature::gregory});
}

Trajectory iterate_T(const Density& y0, std::size_t n_steps, const IterationOptions& options) {
    const Quadrature rule = options.op.quadrature;
    const double norm0 = quad_norm(y0, rule);
    if (!(norm0 > 0.0)) throw DegenerateInput("iterate_T needs an initial density with positive norm");
    const double mean_per_mass = quad_mean(y0, rule) / norm0;
    if (!(mean_per_mass > 0.0)) throw DegenerateInput("iterate_T needs an initial density with positive mean");

    Trajectory traj{.reports = {},
                    .states = {},
                    .target = sample_family(FamilySpec::exponential(1.0 / mean_per_mass), y0.grid()),
                    .initial = {}};

    const MomentSummary m0 = moments(y0, rule);
    traj.initial = IterationReport{0, m0.norm, m0.mean, m0.mass_defect, l1_distance(y0, traj.target, rule), 0.0};
    if (options.keep_states) traj.states.push_back(y0);

    Density current = y0;
    for (std::size_t step = 1; step <= n_steps; ++step) {
        Density next = apply_T(current, options.op);
        const MomentSummary m = moments(next, rule);
        const double relative_defect = m.norm > 0.0 ? m.mass_defect / m.norm : 0.0;
        if (relative_defect > options.max_relative_mass_defect || !truncation_healthy(next)) {
            throw TruncationError("step " + std::to_string(step) + ": mass beyond x_max is " +
                                  std::to_string(m.mass_defect) + " (norm " + std::to_string(m.norm) +
                                  "); enlarge the domain");
        }
        IterationReport r{step, m.norm, m.mean, m.mass_defect, l1_distance(next, traj.target, rule),
                          l1_distance(next, current, rule)};
        traj.reports.push_back(r);
        if (options.keep_states) traj.states.push_back(next);
        current = std::move(next);
        if (options.early_stop && r.step_delta < options.early_stop_delta) break;
    }
    return traj;
}

std::vector<std::complex<double>> characteristic_function(const Density& y, std::span<const double> p_values,
                                                          Quadrature rule) {
    const auto w = y.grid().weights(rule);
    const auto x = y.grid().nodes();
    const auto v = y.values();
    std::vector<std::complex<double>> out;
    out.reserve(p_values.size());
    for (double p : p_values) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double wy = w[i] * v[i];
            re += wy * std::cos(p * x[i]);
            im += wy * std::sin(p * x[i]);
        }
        out.emplace_back(re, im);
    }
    return out;
}

std::vector<double> fixed_point_ode_residual(const Density& y, std::span<const double> p_values, double step,
                                             Quadrature rule) {
    if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    std::vector<double> probes;
    probes.reserve(3 * p_values.size());
    for (double p : p_values) {
        if (p == 0.0) throw std::invalid_argument("ODE residual is not evaluated at p = 0");
        probes.insert(probes.end(), {p - step, p, p + step});
    }
    const auto phi = characteristic_function(y, probes, rule);
    std::vector<double> out;
    out.reserve(p_values.size());
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        const auto lo = phi[3 * i];
        const auto mid = phi[3 * i + 1];
        const auto hi = phi[3 * i + 2];
        const auto derivative = (hi - lo) / (2.0 * step);
        out.push_back(std::abs(mid + p_values[i] * derivative - mid * mid));
    }
    return out;
}

}  // namespace wealth
