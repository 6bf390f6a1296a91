#include "wealth/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wealth/simd.hpp"

namespace wealth {
namespace {

constexpr std::array<double, 1> kTrapezoidDeficits{0.5};
// End weights 95/288, 317/240, 23/30, 793/720, 157/160: each end matches
// the Euler-Maclaurin boundary terms through degree 4.
constexpr std::array<double, 5> kGregoryDeficits{193.0 / 288.0, -77.0 / 240.0, 7.0 / 30.0, -73.0 / 720.0,
                                                 3.0 / 160.0};

// Closed Newton-Cotes weights for 1..8 intervals (unit spacing).
const std::vector<double>& short_rule(std::size_t intervals) {
    static const std::array<std::vector<double>, 9> rules{{
        {0.0},
        {0.5, 0.5},
        {1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0},
        {3.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 3.0 / 8.0},
        {14.0 / 45.0, 64.0 / 45.0, 24.0 / 45.0, 64.0 / 45.0, 14.0 / 45.0},
        {95.0 / 288.0, 125.0 / 96.0, 125.0 / 144.0, 125.0 / 144.0, 125.0 / 96.0, 95.0 / 288.0},
        {41.0 / 140.0, 54.0 / 35.0, 27.0 / 140.0, 68.0 / 35.0, 27.0 / 140.0, 54.0 / 35.0, 41.0 / 140.0},
        {5257.0 / 17280.0, 25039.0 / 17280.0, 343.0 / 640.0, 20923.0 / 17280.0, 20923.0 / 17280.0, 343.0 / 640.0,
         25039.0 / 17280.0, 5257.0 / 17280.0},
        {3956.0 / 14175.0, 23552.0 / 14175.0, -3712.0 / 14175.0, 41984.0 / 14175.0, -3632.0 / 2835.0,
         41984.0 / 14175.0, -3712.0 / 14175.0, 23552.0 / 14175.0, 3956.0 / 14175.0},
    }};
    return rules[intervals];
}

}  // namespace

std::size_t min_corrected_intervals(Quadrature rule) {
    // Both end corrections must fit without overlapping.
    return 2 * endpoint_deficits(rule).size() - 1;
}

const char* to_string(Quadrature rule) {
    return rule == Quadrature::gregory ? "gregory" : "trapezoid";
}

Quadrature quadrature_from_string(const std::string& name) {
    if (name == "gregory") return Quadrature::gregory;
    if (name == "trapezoid") return Quadrature::trapezoid;
    throw std::invalid_argument("unknown quadrature rule: " + name);
}

std::span<const double> endpoint_deficits(Quadrature rule) {
    if (rule == Quadrature::gregory) return kGregoryDeficits;
    return kTrapezoidDeficits;
}

std::vector<double> unit_weights(std::size_t intervals, Quadrature rule) {
    if (intervals < min_corrected_intervals(rule)) return short_rule(intervals);
    std::vector<double> w(intervals + 1, 1.0);
    auto d = endpoint_deficits(rule);
    for (std::size_t m = 0; m < d.size(); ++m) {
        w[m] -= d[m];
        w[intervals - m] -= d[m];
    }
    return w;
}

double integrate_uniform(std::span<const double> f, double h, Quadrature rule) {
    if (f.size() < 2) return 0.0;
    const std::size_t k = f.size() - 1;
    if (k < min_corrected_intervals(rule)) {
        const auto& w = short_rule(k);
        return h * simd::scalar_kernels().dot(w.data(), f.data(), f.size());
    }
    double s = 0.0;
    for (double v : f) s += v;
    auto d = endpoint_deficits(rule);
    for (std::size_t m = 0; m < d.size(); ++m) s -= d[m] * (f[m] + f[k - m]);
    return h * s;
}

Grid::Grid(std::size_t n_points, double x_max) : n_points_(n_points), x_max_(x_max) {
    if (n_points < kMinGridPoints) {
        throw std::invalid_argument("grid needs at least " + std::to_string(kMinGridPoints) +
                                    " points, got " + std::to_string(n_points));
    }
    if (!(x_max > 0.0) || !std::isfinite(x_max)) {
        throw std::invalid_argument("grid x_max must be positive and finite");
    }
    spacing_ = x_max / static_cast<double>(n_points - 1);

    auto nodes = std::make_shared<std::vector<double>>(n_points);
    for (std::size_t i = 0; i < n_points; ++i) (*nodes)[i] = static_cast<double>(i) * spacing_;
    nodes->back() = x_max;
    nodes_ = std::move(nodes);

    auto scaled = [&](Quadrature rule) {
        auto w = std::make_shared<std::vector<double>>(unit_weights(n_points - 1, rule));
        for (double& v : *w) v *= spacing_;
        return w;
    };
    trapezoid_weights_ = scaled(Quadrature::trapezoid);
    gregory_weights_ = scaled(Quadrature::gregory);
}

std::span<const double> Grid::weights(Quadrature rule) const {
    return rule == Quadrature::gregory ? *gregory_weights_ : *trapezoid_weights_;
}

Grid make_grid(std::size_t n_points, double x_max) { return Grid(n_points, x_max); }

Density::Density(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw GridMismatch("density has " + std::to_string(values_.size()) + " values for a grid of " +
                           std::to_string(grid_.size()) + " nodes");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
            throw std::invalid_argument("density value at node " + std::to_string(i) +
                                        " is negative or not finite");
        }
    }
}

Density Density::zero(const Grid& grid) { return Density(grid, std::vector<double>(grid.size(), 0.0)); }

double Density::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

Density scale(const Density& y, double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("density scale factor must be nonnegative");
    std::vector<double> v(y.values().begin(), y.values().end());
    for (double& x : v) x *= c;
    return Density(y.grid(), std::move(v));
}

double quad_norm(const Density& y, Quadrature rule) {
    return simd::dot(y.grid().weights(rule), y.values());
}

double quad_mean(const Density& y, Quadrature rule) {
    if (quad_norm(y, rule) == 0.0) throw DegenerateInput("mean of a density with zero norm");
    return simd::dot3(y.grid().weights(rule), y.grid().nodes(), y.values());
}

double l1_distance(const Density& y, const Density& w, Quadrature rule) {
    if (!(y.grid() == w.grid())) throw GridMismatch("l1_distance on densities with different grids");
    return simd::abs_diff_dot(y.grid().weights(rule), y.values(), w.values());
}

double tail_mass_estimate(const Density& y) {
    const std::size_t n = y.size();
    const std::size_t window = std::max<std::size_t>(n / 10, 2);
    const std::size_t ia = n - 1 - window;
    const std::size_t ib = n - 1;
    const double ya = y[ia];
    const double yb = y[ib];
    if (yb == 0.0) return 0.0;
    if (ya <= yb) return std::numeric_limits<double>::infinity();
    const double rate = std::log(ya / yb) / (y.grid().node(ib) - y.grid().node(ia));
    return yb / rate;
}

MomentSummary moments(const Density& y, Quadrature rule) {
    MomentSummary s;
    s.norm = quad_norm(y, rule);
    s.mean = s.norm > 0.0 ? simd::dot3(y.grid().weights(rule), y.grid().nodes(), y.values()) : 0.0;
    s.mass_defect = tail_mass_estimate(y);
    return s;
}

bool truncation_healthy(const Density& y, double tail_epsilon) {
    return y[y.size() - 1] <= tail_epsilon * y.max_value();
}

}  // namespace wealth
