#include "wealth/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>

#include "wealth/families.hpp"
#include "wealth/finite_difference.hpp"

namespace wealth {
namespace {

// Stream indices: each check draws from its own stream so that results do
// not depend on which checks ran before it.
enum Stream : std::uint64_t {
    kNormStream = 11,
    kMeanStream,
    kLipschitzStream,
    kCycleStream,
    kShapeStream,
    kMethodStream,
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

double uniform(Xoshiro256& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform_open01(); }

Grid suite_grid(const VerifyOptions& o) { return make_grid(o.n_points, o.x_max); }

Density exponential(const Grid& grid, double alpha) {
    return Density::sample(grid, [alpha](double x) { return alpha * std::exp(-alpha * x); });
}

}  // namespace

PropertyResult make_result(std::string name, Relation relation, double measured, double threshold,
                           std::string detail) {
    PropertyResult r;
    r.name = std::move(name);
    r.relation = relation;
    r.measured = measured;
    r.threshold = threshold;
    // NaN fails either way.
    r.passed = relation == Relation::at_most ? measured <= threshold : measured >= threshold;
    r.detail = std::move(detail);
    return r;
}

bool VerifyReport::all_passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

std::vector<std::string> VerifyReport::failed() const {
    std::vector<std::string> out;
    for (const auto& p : properties) {
        if (!p.passed) out.push_back(p.name);
    }
    return out;
}

Density random_density(const Grid& grid, Xoshiro256& rng, double norm) {
    const std::size_t parts = 1 + rng.bounded(3);
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t c = 0; c < parts; ++c) {
        const int k = static_cast<int>(rng.bounded(5));
        const double mean = uniform(rng, 0.5, 1.5);
        const double a = (k + 1) / mean;
        const double w = uniform(rng, 0.2, 1.0);
        // Peak-normalized so that weights are comparable across shapes.
        const double peak = k == 0 ? 1.0 : std::pow(k / a, k) * std::exp(-k);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double x = grid.node(i);
            v[i] += w * std::pow(x, k) * std::exp(-a * x) / peak;
        }
    }
    const Density raw(grid, std::move(v));
    return scale(raw, norm / quad_norm(raw));
}

Density near_exponential_density(const Grid& grid, Xoshiro256& rng) {
    const double alpha = uniform(rng, 0.75, 1.5);
    const double s = std::pow(10.0, -uniform(rng, 1.0, 6.0));
    const Density bump = random_density(grid, rng);
    const Density e = exponential(grid, alpha);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (1.0 - s) * e[i] + s * bump[i];
    const Density raw(grid, std::move(v));
    return scale(raw, 1.0 / quad_norm(raw));
}

PropertyResult check_fixed_point(const VerifyOptions& o) {
    double worst = 0.0;
    double worst_alpha = 0.0;
    for (double alpha : {0.5, 1.0, 2.0}) {
        const Grid grid = make_grid(o.n_points, o.x_max / alpha);
        const Density y = exponential(grid, alpha);
        const double d = l1_distance(apply_T(y, o.op), y, o.op.quadrature);
        if (!(d <= worst)) {
            worst = d;
            worst_alpha = alpha;
        }
    }
    return make_result("fixed_point", Relation::at_most, worst, kFixedPointTolerance,
                       fmt("max l1(Ty, y) over alpha in {0.5,1,2}; worst at alpha=%g", worst_alpha));
}

PropertyResult check_norm_squaring(const VerifyOptions& o) {
    const Grid grid = suite_grid(o);
    auto rng = Xoshiro256::stream(o.seed, kNormStream);
    double worst = 0.0;
    for (std::size_t s = 0; s < o.samples; ++s) {
        const Density y = random_density(grid, rng, uniform(rng, 0.25, 2.0));
        const double n = quad_norm(y, o.op.quadrature);
        const double err = std::abs(quad_norm(apply_T(y, o.op), o.op.quadrature) - n * n);
        worst = std::max(worst, err);
    }
    return make_result("norm_squaring", Relation::at_most, worst, kNormSquaringTolerance,
                       fmt("max |‖Ty‖ - ‖y‖²| over %g densities with norms in [0.25, 2]",
                           static_cast<double>(o.samples)));
}

PropertyResult check_mean_conservation(const VerifyOptions& o) {
    const Grid grid = suite_grid(o);
    auto rng = Xoshiro256::stream(o.seed, kMeanStream);
    double worst = 0.0;
    std::size_t used = 0;
    for (std::size_t s = 0; s < o.samples; ++s) {
        const Density y = random_density(grid, rng);
        if (tail_mass_estimate(y) >= kMeanCheckMaxDefect) continue;
        const double m = quad_mean(y, o.op.quadrature);
        worst = std::max(worst, std::abs(quad_mean(apply_T(y, o.op), o.op.quadrature) - m) / m);
        ++used;
    }
    if (used == 0) worst = std::nan("");
    return make_result("mean_conservation", Relation::at_most, worst, kMeanDriftTolerance,
                       fmt("max relative mean drift over %g PDFs", static_cast<double>(used)));
}

std::vector<PropertyResult> check_lipschitz(const VerifyOptions& o) {
    const Grid grid = suite_grid(o);
    auto rng = Xoshiro256::stream(o.seed, kLipschitzStream);
    double worst = 0.0;
    for (std::size_t s = 0; s < o.samples; ++s) {
        Density y = Density::zero(grid);
        Density w = Density::zero(grid);
        if (s % 5 == 0) {
            // Two fixed points: the exact ratio is 1.
            const double a = uniform(rng, 0.75, 1.5);
            double b = uniform(rng, 0.75, 1.5);
            if (std::abs(a - b) < 1e-3) b += 0.1;
            y = exponential(grid, a);
            w = exponential(grid, b);
        } else if (s % 5 < 3) {
            // A small mass moved far from the bulk. T spreads the displaced
            // mass over a wide interval, so these pairs push the ratio
            // above 1.
            y = random_density(grid, rng);
            const double far = uniform(rng, 4.0, 8.0);
            const double a = 9.0 / far;
            const Density bump = Density::sample(grid, [a](double x) { return std::pow(a * x, 8) * std::exp(-a * x); });
            const double frac = std::pow(10.0, -uniform(rng, 1.0, 3.0));
            const double bump_norm = quad_norm(bump, o.op.quadrature);
            std::vector<double> v(grid.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = (1.0 - frac) * y[i] + frac * bump[i] / bump_norm;
            w = Density(grid, std::move(v));
        } else {
            y = random_density(grid, rng);
            w = random_density(grid, rng);
        }
        const double d = l1_distance(y, w, o.op.quadrature);
        if (d <= 0.0) continue;
        const double ratio = l1_distance(apply_T(y, o.op), apply_T(w, o.op), o.op.quadrature) / d;
        worst = std::max(worst, ratio);
    }
    return {
        make_result("lipschitz_bound", Relation::at_most, worst, kLipschitzConstant + kLipschitzSlack,
                    "max l1(Ty, Tw) / l1(y, w) over random PDF pairs"),
        make_result("lipschitz_nonvacuous", Relation::at_least, worst, 1.0,
                    "max ratio again: some pair must reach at least 1"),
    };
}

PropertyResult check_norm_trichotomy(const VerifyOptions& o) {
    const Grid grid = suite_grid(o);
    const Density tri = triangle_density(grid, 1.0, o.op.quadrature);
    double worst = 0.0;
    std::string detail;
    for (double c : {0.9, 1.0, 1.1}) {
        Density y = scale(tri, c);
        const double n0 = quad_norm(y, o.op.quadrature);
        double expected = n0;
        for (std::size_t k = 1; k <= kTrichotomySteps; ++k) {
            y = apply_T(y, o.op);
            expected *= expected;
            const double rel = std::abs(quad_norm(y, o.op.quadrature) - expected) / expected;
            worst = std::max(worst, rel);
        }
        detail += fmt("‖y0‖=%g -> %.6g; ", c, quad_norm(y, o.op.quadrature));
    }
    detail += "max relative error against ‖y0‖^(2^k), k <= 5";
    return make_result("norm_trichotomy", Relation::at_most, worst, kTrichotomyTolerance, detail);
}

PropertyResult check_no_two_cycles(const VerifyOptions& o) {
    const Grid grid = suite_grid(o);
    auto rng = Xoshiro256::stream(o.seed, kCycleStream);
    std::size_t premise = 0;
    std::size_t violations = 0;
    for (std::size_t s = 0; s < o.samples; ++s) {
        const Density y = s % 2 == 0 ? near_exponential_density(grid, rng) : random_density(grid, rng);
        const Density ty = apply_T(y, o.op);
        const Density tty = apply_T(ty, o.op);
        if (l1_distance(tty, y, o.op.quadrature) < kTwoCyclePremise) {
            ++premise;
            if (l1_distance(ty, y, o.op.quadrature) >= kTwoCycleConclusion) ++violations;
        }
    }
    return make_result("no_two_cycles", Relation::at_most, static_cast<double>(violations), 0.0,
                       fmt("instances with l1(T²y, y) < 1e-4 and l1(Ty, y) >= 1e-3; premise held for %g of %g",
                           static_cast<double>(premise), static_cast<double>(o.samples)));
}

std::vector<PropertyResult> check_ode_residual(const VerifyOptions& o) {
    const Grid grid = suite_grid(o);
    const std::array<double, 3> ps{0.5, 1.0, 2.0};
    const auto fixed = fixed_point_ode_residual(exponential(grid, 1.0), ps, kOdeResidualStep, o.op.quadrature);
    const auto tri = fixed_point_ode_residual(triangle_density(grid, 1.0, o.op.quadrature), ps,
                                              kOdeResidualStep, o.op.quadrature);
    return {
        make_result("ode_residual_fixed_point", Relation::at_most, *std::max_element(fixed.begin(), fixed.end()),
                    kOdeFixedPointMax, "max residual of the exponential at p in {0.5, 1, 2}"),
        make_result("ode_residual_triangle", Relation::at_least, *std::min_element(tri.begin(), tri.end()),
                    kOdeNonFixedPointMin, "min residual of the triangle at p in {0.5, 1, 2}"),
    };
}

std::vector<PropertyResult> check_complete_monotonicity(const VerifyOptions& o) {
    const Grid grid = suite_grid(o);
    const Density fixed = exponential(grid, 1.0);
    const Density t2 = apply_T(apply_T(triangle_density(grid, 1.0, o.op.quadrature), o.op), o.op);
    const Density t3 = apply_T(t2, o.op);

    double worst_sign = std::numeric_limits<double>::infinity();
    for (const Density* y : {&fixed, &t3}) {
        for (int m = 1; m <= 3; ++m) {
            const auto d = fd::central_derivative(*y, m);
            const double sign = m % 2 == 0 ? 1.0 : -1.0;
            for (double v : d.values) worst_sign = std::min(worst_sign, sign * v);
        }
    }

    // (-1)^m (Ty)^(m)(0) = (1/m) sum_k a_k a_{m-1-k}, a_k = (-1)^k y^(k)(0).
    double worst_rec = 0.0;
    const std::array<std::pair<const Density*, Density>, 2> cases{
        std::pair<const Density*, Density>{&fixed, apply_T(fixed, o.op)},
        std::pair<const Density*, Density>{&t2, t3},
    };
    for (const auto& [prev, next] : cases) {
        std::array<double, 3> a{};
        for (int k = 0; k < 3; ++k) a[k] = (k % 2 == 0 ? 1.0 : -1.0) * fd::derivative_at_zero(*prev, k);
        for (int m = 1; m <= 3; ++m) {
            double predicted = 0.0;
            for (int k = 0; k < m; ++k) predicted += a[k] * a[m - 1 - k];
            predicted /= m;
            const double measured = (m % 2 == 0 ? 1.0 : -1.0) * fd::derivative_at_zero(next, m);
            worst_rec = std::max(worst_rec, std::abs(measured - predicted) / std::abs(predicted));
        }
    }
    return {
        make_result("derivative_sign_pattern", Relation::at_least, worst_sign, -kSignPatternSlack,
                    "min (-1)^m y^(m), m = 1..3, interior nodes of the fixed point and T³(triangle)"),
        make_result("derivative_recurrence_at_zero", Relation::at_most, worst_rec, kRecurrenceTolerance,
                    "max relative gap of (Ty)^(m)(0) against the product recurrence, m <= 3"),
    };
}

std::vector<PropertyResult> check_output_shape(const VerifyOptions& o) {
    const Grid grid = suite_grid(o);
    auto rng = Xoshiro256::stream(o.seed, kShapeStream);
    double min_value = std::numeric_limits<double>::infinity();
    double max_rise = 0.0;
    const std::size_t count = std::max<std::size_t>(1, o.samples / 5);
    for (std::size_t s = 0; s < count; ++s) {
        const Density ty = apply_T(random_density(grid, rng, uniform(rng, 0.25, 2.0)), o.op);
        const auto v = ty.values();
        const double top = ty.max_value();
        for (std::size_t i = 0; i < v.size(); ++i) {
            min_value = std::min(min_value, v[i]);
            if (i + 1 < v.size() && top > 0.0) max_rise = std::max(max_rise, (v[i + 1] - v[i]) / top);
        }
    }
    return {
        make_result("output_nonnegative", Relation::at_least, min_value, 0.0, "min over nodes of T y"),
        make_result("output_nonincreasing", Relation::at_most, max_rise, kMonotoneSlack,
                    "max rise between adjacent nodes of T y, relative to max T y"),
    };
}

PropertyResult check_direct_vs_fft(const VerifyOptions& o) {
    const Grid grid = suite_grid(o);
    auto rng = Xoshiro256::stream(o.seed, kMethodStream);
    double worst = 0.0;
    const std::size_t count = std::max<std::size_t>(1, o.samples / 10);
    for (std::size_t s = 0; s < count; ++s) {
        const Density y = random_density(grid, rng);
        const auto a = autoconvolve(y, ConvolutionMethod::direct, o.op.quadrature);
        const auto b = autoconvolve(y, ConvolutionMethod::fft, o.op.quadrature);
        for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
    }
    return make_result("direct_vs_fft", Relation::at_most, worst, kMethodAgreement,
                       "max pointwise autoconvolution gap on unit-norm inputs");
}

VerifyReport run_property_suite(const VerifyOptions& o) {
    VerifyReport report;
    auto run = [&](const char* name, const std::function<std::vector<PropertyResult>()>& check) {
        try {
            for (auto& r : check()) report.properties.push_back(std::move(r));
        } catch (const std::exception& e) {
            PropertyResult r = make_result(name, Relation::at_most, std::nan(""), 0.0, e.what());
            report.properties.push_back(std::move(r));
        }
    };
    auto one = [](PropertyResult r) { return std::vector<PropertyResult>{std::move(r)}; };
    run("fixed_point", [&] { return one(check_fixed_point(o)); });
    run("norm_squaring", [&] { return one(check_norm_squaring(o)); });
    run("mean_conservation", [&] { return one(check_mean_conservation(o)); });
    run("lipschitz", [&] { return check_lipschitz(o); });
    run("norm_trichotomy", [&] { return one(check_norm_trichotomy(o)); });
    run("no_two_cycles", [&] { return one(check_no_two_cycles(o)); });
    run("ode_residual", [&] { return check_ode_residual(o); });
    run("complete_monotonicity", [&] { return check_complete_monotonicity(o); });
    run("output_shape", [&] { return check_output_shape(o); });
    run("direct_vs_fft", [&] { return one(check_direct_vs_fft(o)); });
    return report;
}

}  // namespace wealth
