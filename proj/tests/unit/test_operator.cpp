#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "wealth/operator.hpp"

using namespace wealth;
using boost::math::quadrature::gauss_kronrod;

namespace {

const Grid kGrid = make_grid(kDefaultGridPoints, 40.0);

Density exp_density(const Grid& g, double alpha = 1.0, double c = 1.0) {
    return Density::sample(g, [=](double x) { return c * alpha * std::exp(-alpha * x); });
}

double triangle(double x) { return x < 1.0 ? x : (x < 2.0 ? 2.0 - x : 0.0); }

// (T y)(x) = integral over u + v > x of y(u) y(v) / (u + v), done as a
// nested adaptive integral over [0, 2]^2 split along the kinks of the
// triangle.
double triangle_T_oracle(double x) {
    auto inner = [x](double u) {
        auto f = [u](double v) { return triangle(u) * triangle(v) / (u + v); };
        const double lo = std::clamp(x - u, 0.0, 2.0);
        double s = 0.0;
        std::vector<double> cuts{lo, 1.0, 2.0};
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = std::max(cuts[i], lo);
            const double b = cuts[i + 1];
            if (b > a) s += gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13);
        }
        return s;
    };
    return gauss_kronrod<double, 61>::integrate(inner, 0.0, 1.0, 12, 1e-13) +
           gauss_kronrod<double, 61>::integrate(inner, 1.0, 2.0, 12, 1e-13);
}

// First iterate of alpha^{n+1} x^n e^{-alpha x} / n!, reduced to a finite sum:
// alpha / (2n+1) e^{-alpha x} sum_{k<=2n} (alpha x)^k / k!.
double gamma_first_iterate(double alpha, int n, double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 2 * n; ++k) {
        term *= alpha * x / k;
        sum += term;
    }
    return alpha / (2 * n + 1) * std::exp(-alpha * x) * sum;
}

}  // namespace

TEST_SUITE("operator") {
    TEST_CASE("autoconvolution of an exponential") {
        for (auto method : {ConvolutionMethod::direct, ConvolutionMethod::fft}) {
            const auto c = autoconvolve(exp_density(kGrid), method);
            CHECK(c.size() == 2 * kGrid.size() - 1);
            CHECK(c.values[0] == 0.0);
            const std::size_t k = 4096 / 40;  // r = 0.99..., use the exact node
            const double r = c.radius(k);
            CHECK(std::abs(c.values[k] - r * std::exp(-r)) <= 1e-6);
            // r = 1 lies between nodes; check the worst node error instead.
            double worst = 0.0;
            for (std::size_t j = 0; j < c.size(); ++j) {
                worst = std::max(worst, std::abs(c.values[j] - c.radius(j) * std::exp(-c.radius(j))));
            }
            CHECK(worst <= 1e-6);
        }
    }

    TEST_CASE("autoconvolution of a box") {
        const Grid g = make_grid(1025, 2.0);
        const Density box = Density::sample(g, [](double x) { return x <= 1.0 ? 1.0 : 0.0; });
        const auto c = autoconvolve(box, ConvolutionMethod::fft);
        const std::size_t k = 256;  // r = 0.5
        CHECK(c.radius(k) == 0.5);
        CHECK(std::abs(c.values[k] - 0.5) <= 2.0 * g.spacing());
    }

    TEST_CASE("exponentials are fixed points") {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const Grid g = make_grid(kDefaultGridPoints, 40.0 / alpha);
            const Density y = exp_density(g, alpha);
            CHECK(l1_distance(apply_T(y), y) <= 1e-6);
        }
    }

    TEST_CASE("zero maps to zero") {
        const Density z = apply_T(Density::zero(kGrid));
        CHECK(z.max_value() == 0.0);
    }

    TEST_CASE("gamma density against its first iterate") {
        const Density y = Density::sample(kGrid, [](double x) { return x * std::exp(-x); });
        const Density ty = apply_T(y);
        const Density exact = Density::sample(kGrid, [](double x) { return gamma_first_iterate(1.0, 1, x); });
        CHECK(l1_distance(ty, exact) <= 1e-5);
        CHECK(std::abs(ty[0] - 1.0 / 3.0) <= 1e-6);
        // T(0) = integral of y(u) y(v) / (u + v) over the quadrant.
        auto inner = [](double u) {
            return gauss_kronrod<double, 61>::integrate(
                [u](double v) { return u * std::exp(-u) * v * std::exp(-v) / (u + v); }, 0.0, 60.0, 15, 1e-13);
        };
        const double t0 = gauss_kronrod<double, 61>::integrate(inner, 0.0, 60.0, 15, 1e-13);
        CHECK(t0 == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    }

    TEST_CASE("triangle against a 2-D quadrature oracle") {
        const Density y = Density::sample(kGrid, triangle);
        const Density ty = apply_T(y);
        for (std::size_t i : {0, 51, 102, 205, 307}) {
            CAPTURE(i);
            // Kinks of the triangle cost accuracy in the convolution.
            CHECK(std::abs(ty[i] - triangle_T_oracle(kGrid.node(i))) <= 1e-5);
        }
    }

    TEST_CASE("direct and fft agree") {
        const Density y = Density::sample(kGrid, [](double x) { return (1.0 + std::sin(3.0 * x)) * std::exp(-x); });
        const Density unit = scale(y, 1.0 / quad_norm(y));
        const auto a = autoconvolve(unit, ConvolutionMethod::direct);
        const auto b = autoconvolve(unit, ConvolutionMethod::fft);
        double worst = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
        CHECK(worst <= 1e-10);
        CHECK(l1_distance(apply_T(unit, ConvolutionMethod::direct), apply_T(unit, ConvolutionMethod::fft)) <= 1e-10);
    }

    TEST_CASE("trapezoid option converges at second order") {
        double prev = 0.0;
        for (std::size_t n : {513, 1025, 2049}) {
            const Grid g = make_grid(n, 40.0);
            const Density y = Density::sample(g, [](double x) { return x * std::exp(-x); });
            const Density exact = Density::sample(g, [](double x) { return gamma_first_iterate(1.0, 1, x); });
            const double e = l1_distance(apply_T(y, {ConvolutionMethod::fft, Quadrature::trapezoid}), exact,
                                         Quadrature::trapezoid);
            if (prev != 0.0) {
                const double order = std::log2(prev / e);
                CHECK(order >= 1.8);
                CHECK(order <= 2.2);
            }
            prev = e;
        }
    }

    TEST_CASE("output is nonnegative, decreasing and continuous") {
        // Trapezoid tail sums decrease exactly; the corrected rule is
        // covered by the property suite with its own slack.
        double prev_jump = 0.0;
        for (std::size_t n : {1025, 2049, 4097}) {
            const Grid g = make_grid(n, 40.0);
            const Density ty = apply_T(Density::sample(g, triangle), {ConvolutionMethod::fft, Quadrature::trapezoid});
            double jump = 0.0;
            for (std::size_t i = 0; i + 1 < ty.size(); ++i) {
                CHECK(ty[i + 1] <= ty[i]);
                jump = std::max(jump, ty[i] - ty[i + 1]);
            }
            if (prev_jump != 0.0) CHECK(jump / prev_jump == doctest::Approx(0.5).epsilon(0.05));
            prev_jump = jump;
        }
    }

    TEST_CASE("iterating a fixed point") {
        const auto t = iterate_T(exp_density(kGrid), 3);
        REQUIRE(t.reports.size() == 3);
        for (const auto& r : t.reports) CHECK(r.dist_to_target < 1e-5);
        CHECK(t.initial.step == 0);
        CHECK(t.reports[2].step == 3);
    }

    TEST_CASE("norm below one collapses by squaring") {
        const Density y = exp_density(kGrid, 1.0, 0.5);
        const auto t = iterate_T(y, 3);
        CHECK(t.reports[0].norm == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(t.reports[1].norm == doctest::Approx(0.0625).epsilon(1e-9));
        CHECK(t.reports[2].norm == doctest::Approx(0.00390625).epsilon(1e-9));
    }

    TEST_CASE("triangle trajectory contracts monotonically") {
        const Density tri = Density::sample(kGrid, triangle);
        const auto t = iterate_T(scale(tri, 1.0 / quad_norm(tri)), 10);
        double prev_dist = t.initial.dist_to_target;
        double prev_delta = INFINITY;
        for (const auto& r : t.reports) {
            CHECK(r.dist_to_target < prev_dist);
            CHECK(r.step_delta < prev_delta);
            prev_dist = r.dist_to_target;
            prev_delta = r.step_delta;
        }
    }

    TEST_CASE("iteration options and failures") {
        IterationOptions opts;
        opts.early_stop = true;
        opts.keep_states = true;
        const auto t = iterate_T(exp_density(kGrid), 20, opts);
        CHECK(t.reports.size() == 1);
        CHECK(t.states.size() == 2);

        CHECK_THROWS_AS(iterate_T(Density::zero(kGrid), 2), DegenerateInput);
        // Mean 1 on [0, 10]: e^{-10} of the mass is cut off.
        CHECK_THROWS_AS(iterate_T(exp_density(make_grid(1025, 10.0)), 2), TruncationError);
    }

    TEST_CASE("characteristic function") {
        const std::vector<double> ps{0.0, 1.0, -1.0, 2.5};
        const auto phi = characteristic_function(exp_density(kGrid), ps);
        CHECK(std::abs(phi[0] - std::complex<double>(1.0, 0.0)) <= 1e-8);
        CHECK(std::abs(phi[1] - std::complex<double>(0.5, 0.5)) <= 1e-6);
        CHECK(std::abs(phi[2] - std::conj(phi[1])) <= 1e-15);
        CHECK(std::abs(phi[3] - 1.0 / std::complex<double>(1.0, -2.5)) <= 1e-6);

        const Density tri = Density::sample(kGrid, triangle);
        const std::vector<double> one{1.0};
        const auto t = characteristic_function(tri, one);
        // Kinks at the peak and the support end limit any rule to second order: h^2 / 12 times the slope jumps.
        const double kink_bound = kGrid.spacing() * kGrid.spacing() / 12.0 * 3.0;
        CHECK(std::abs(t[0] - std::complex<double>(0.49675144828342, 0.77364454279011)) <= kink_bound);
    }

    TEST_CASE("fixed-point ODE residual") {
        const std::vector<double> ps{0.5, 1.0, 2.0};
        const auto e = fixed_point_ode_residual(exp_density(kGrid), ps);
        for (double r : e) CHECK(r < 1e-4);

        const Density tri = Density::sample(kGrid, triangle);
        const auto t = fixed_point_ode_residual(tri, ps);
        CHECK(t[1] > 1e-2);
        CHECK(t[0] == doctest::Approx(0.1011717945646188).epsilon(1e-5));
        CHECK(t[1] == doctest::Approx(0.3707531791509333).epsilon(1e-5));
        CHECK(t[2] == doctest::Approx(1.0440684410858834).epsilon(1e-5));

        const std::vector<double> bad{0.0};
        CHECK_THROWS_AS(fixed_point_ode_residual(tri, bad), std::invalid_argument);
        CHECK_THROWS_AS(fixed_point_ode_residual(tri, ps, 0.0), std::invalid_argument);
    }

    TEST_CASE("ODE residual shrinks with the square of the step") {
        const std::vector<double> p{1.0};
        const Density y = exp_density(kGrid);
        const double coarse = fixed_point_ode_residual(y, p, 4e-2)[0];
        const double fine = fixed_point_ode_residual(y, p, 2e-2)[0];
        CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.02));
    }

    TEST_CASE("method names round-trip") {
        for (auto m : {ConvolutionMethod::direct, ConvolutionMethod::fft}) {
            CHECK(convolution_method_from_string(to_string(m)) == m);
        }
        CHECK_THROWS_AS(convolution_method_from_string("winograd"), std::invalid_argument);
    }
}
