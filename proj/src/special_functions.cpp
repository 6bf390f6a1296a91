#include "wealth/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wealth::special {
namespace {

constexpr double kDirectLimit = 500.0;  // e^{-x} * partial sum stays representable

void check_order(int s) {
    if (s < 1) {
        throw std::domain_error("upper_incomplete_gamma needs integer order s >= 1 (use exp_integral_e1 for s = 0)");
    }
    if (s > kMaxGammaOrder) {
        throw std::domain_error("upper_incomplete_gamma order " + std::to_string(s) + " exceeds " +
                                std::to_string(kMaxGammaOrder));
    }
}

void check_argument(double x) {
    if (!(x >= 0.0)) throw std::domain_error("incomplete gamma argument must be >= 0");
}

// sum_{k=0}^{s-1} x^k / k!, ascending.
double partial_exp_sum(int s, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < s; ++k) {
        term *= x / k;
        sum += term;
    }
    return sum;
}

// log of the same sum, scaled by its largest term.
double log_partial_exp_sum(int s, double x) {
    if (x == 0.0) return 0.0;
    const double lx = std::log(x);
    const int k_peak = std::min(s - 1, static_cast<int>(std::floor(x)));
    const double log_peak = k_peak * lx - std::lgamma(k_peak + 1.0);
    double sum = 0.0;
    for (int k = 0; k < s; ++k) sum += std::exp(k * lx - std::lgamma(k + 1.0) - log_peak);
    return log_peak + std::log(sum);
}

}  // namespace

double factorial(int n) {
    static const std::array<double, 21> table = [] {
        std::array<double, 21> t{};
        t[0] = 1.0;
        for (int i = 1; i <= 20; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0) throw std::domain_error("factorial of a negative integer");
    if (n <= 20) return table[n];
    return std::exp(std::lgamma(n + 1.0));
}

double log_factorial(int n) {
    if (n < 0) throw std::domain_error("factorial of a negative integer");
    if (n <= 20) return std::log(factorial(n));
    return std::lgamma(n + 1.0);
}

double upper_incomplete_gamma(int s, double x) {
    check_order(s);
    check_argument(x);
    if (x <= kDirectLimit && s <= 171) {
        return factorial(s - 1) * (std::exp(-x) * partial_exp_sum(s, x));
    }
    return std::exp(log_upper_incomplete_gamma(s, x));
}

double log_upper_incomplete_gamma(int s, double x) {
    check_order(s);
    check_argument(x);
    if (x <= kDirectLimit && s <= 20) {
        return log_factorial(s - 1) - x + std::log(partial_exp_sum(s, x));
    }
    return log_factorial(s - 1) - x + log_partial_exp_sum(s, x);
}

double exp_integral_e1_series(double x) {
    if (!(x > 0.0)) throw std::domain_error("E1 is defined for x > 0");
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    double term = 1.0;  // (-x)^k / k!
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= -x / k;
        const double contrib = term / k;
        sum += contrib;
        if (std::fabs(contrib) < 1e-17 * std::fabs(sum)) break;
    }
    return -std::numbers::egamma - std::log(x) - sum;
}

double exp_integral_e1_continued_fraction(double x) {
    if (!(x > 0.0)) throw std::domain_error("E1 is defined for x > 0");
    // Modified Lentz evaluation of e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("E1 is defined for x > 0 (logarithmic singularity at 0)");
    return x <= kE1SeriesLimit ? exp_integral_e1_series(x) : exp_integral_e1_continued_fraction(x);
}

double gamma_half_integer(int k) {
    if (k < 0) throw std::domain_error("gamma_half_integer needs k >= 0");
    if (k > 170) throw std::overflow_error("gamma_half_integer overflows for k > 170");
    double g = std::sqrt(std::numbers::pi);
    for (int j = 1; j <= k; ++j) g *= (j - 0.5);
    return g;
}

double log_gamma_half_integer(int k) {
    if (k < 0) throw std::domain_error("gamma_half_integer needs k >= 0");
    if (k <= 20) return std::log(gamma_half_integer(k));
    return std::lgamma(k + 0.5);
}

}  // namespace wealth::special
