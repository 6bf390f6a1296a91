#include <cmath>
#include <vector>

#include "doctest.h"
#include "wealth/finite_difference.hpp"

using namespace wealth;

TEST_SUITE("finite_difference") {
    TEST_CASE("stencil weights reproduce textbook stencils") {
        const std::vector<double> three{-1.0, 0.0, 1.0};
        const auto d1 = fd::stencil_weights(0.0, three, 1);
        CHECK(d1[0] == doctest::Approx(-0.5));
        CHECK(d1[1] == doctest::Approx(0.0));
        CHECK(d1[2] == doctest::Approx(0.5));
        const auto d2 = fd::stencil_weights(0.0, three, 2);
        CHECK(d2[0] == doctest::Approx(1.0));
        CHECK(d2[1] == doctest::Approx(-2.0));
        CHECK(d2[2] == doctest::Approx(1.0));
        CHECK_THROWS_AS(fd::stencil_weights(0.0, three, 3), std::invalid_argument);
    }

    TEST_CASE("one-sided stencils are exact on polynomials") {
        const std::vector<double> nodes{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
        // p(x) = 2 - 3x + x^2 - 4x^3 + 0.5x^5
        auto p = [](double x) { return 2 - 3 * x + x * x - 4 * x * x * x + 0.5 * std::pow(x, 5); };
        const double exact[] = {2.0, -3.0, 2.0, -24.0};
        for (int m = 0; m <= 3; ++m) {
            const auto w = fd::stencil_weights(0.0, nodes, m);
            double d = 0.0;
            for (std::size_t j = 0; j < nodes.size(); ++j) d += w[j] * p(nodes[j]);
            CHECK(d == doctest::Approx(exact[m]).epsilon(1e-9));
        }
    }

    TEST_CASE("derivatives of a sampled exponential") {
        const Grid g = make_grid(4097, 40.0);
        const Density y = Density::sample(g, [](double x) { return std::exp(-x); });
        for (int m = 1; m <= 3; ++m) {
            const double sign = m % 2 == 0 ? 1.0 : -1.0;
            CHECK(fd::derivative_at_zero(y, m) == doctest::Approx(sign).epsilon(1e-4));
            const auto d = fd::central_derivative(y, m);
            CHECK(d.values.size() == g.size() - 2 * d.first_node);
            const std::size_t i = 500;
            const double x = g.node(d.first_node + i);
            CHECK(d.values[i] == doctest::Approx(sign * std::exp(-x)).epsilon(1e-4));
        }
        CHECK(fd::derivative_at_zero(y, 0) == 1.0);
        CHECK_THROWS_AS(fd::central_derivative(y, 4), std::invalid_argument);
    }
}
