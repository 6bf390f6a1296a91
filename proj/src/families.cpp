#include "wealth/families.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wealth/special_functions.hpp"

namespace wealth {
namespace {

using special::kMaxFamilyOrder;

// a^{n+1} / n!, through logarithms past n = 20.
double gamma_prefactor(double alpha, int n) {
    if (n <= 20) return std::pow(alpha, n + 1) / special::factorial(n);
    return std::exp((n + 1) * std::log(alpha) - special::log_factorial(n));
}

double gamma_density(double alpha, int n, double x) {
    if (n == 0) return alpha * std::exp(-alpha * x);
    if (x == 0.0) return 0.0;
    if (n <= 20) return gamma_prefactor(alpha, n) * std::pow(x, n) * std::exp(-alpha * x);
    return std::exp((n + 1) * std::log(alpha) + n * std::log(x) - alpha * x - special::log_factorial(n));
}

// a sqrt(pi) / (2^{2n+1} n! Gamma(n + 3/2)), the coefficient of
// Gamma(2n + 1, a x) in the first iterate of the gamma family.
double gamma_iterate_coefficient(double alpha, int n) {
    const double log_denominator = (2 * n + 1) * std::numbers::ln2 + special::log_factorial(n) +
                                   special::log_gamma_half_integer(n + 1);
    if (n <= 20) {
        const double denominator = std::pow(2.0, 2 * n + 1) * special::factorial(n) *
                                   special::gamma_half_integer(n + 1);
        return alpha * std::sqrt(std::numbers::pi) / denominator;
    }
    return alpha * std::exp(0.5 * std::log(std::numbers::pi) - log_denominator);
}

double gamma_first_iterate(double alpha, int n, double x) {
    return gamma_iterate_coefficient(alpha, n) * special::upper_incomplete_gamma(2 * n + 1, alpha * x);
}

double mix_first_iterate(double a, double b, double x) {
    const double pure = a * std::exp(-a * x) + b * std::exp(-b * x);
    double cross;
    const double rel_gap = std::fabs(a - b) / std::max(a, b);
    if (rel_gap < 1e-4) {
        // E1(bx) - E1(ax) = -integral_a^b e^{-tx}/t dt, midpoint rule:
        // relative error (b - a)^2 / 24 m^2.
        const double m = 0.5 * (a + b);
        cross = 2.0 * a * b * std::exp(-m * x) / m;
    } else if (x == 0.0) {
        // E1(bx) - E1(ax) -> ln(a / b) as x -> 0.
        cross = 2.0 * a * b / (a - b) * std::log(a / b);
    } else {
        cross = 2.0 * a * b / (a - b) * (special::exp_integral_e1(b * x) - special::exp_integral_e1(a * x));
    }
    return 0.25 * (pure + cross);
}

double epsilon_mix_first_iterate(double eps, double alpha, int n, double x) {
    // The published form alpha {1 + eps [eps - 2 + c1 e^{ax} Gamma(n+1, ax)
    // + c2 e^{ax} Gamma(2n+1, ax)]} e^{-ax}, with e^{-ax} distributed over
    // the bracket so no factor overflows on its own.
    const double z = alpha * x;
    const double exponential_part = alpha * (1.0 + eps * (eps - 2.0)) * std::exp(-z);
    const double cross_coefficient = 2.0 * (1.0 - eps) / special::factorial(n + 1);
    const double cross = alpha * eps * cross_coefficient * special::upper_incomplete_gamma(n + 1, z);
    double square_coefficient;
    if (n <= 20) {
        square_coefficient = std::sqrt(std::numbers::pi) /
                             (std::pow(4.0, n) * special::factorial(n) * 2.0 * special::gamma_half_integer(n + 1));
    } else {
        square_coefficient = std::exp(0.5 * std::log(std::numbers::pi) - n * std::log(4.0) -
                                      special::log_factorial(n) - std::numbers::ln2 -
                                      special::log_gamma_half_integer(n + 1));
    }
    const double square = alpha * eps * eps * square_coefficient * special::upper_incomplete_gamma(2 * n + 1, z);
    return exponential_part + cross + square;
}

}  // namespace

const char* to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::exponential: return "exponential";
        case FamilyKind::gamma: return "gamma";
        case FamilyKind::two_exponential_mix: return "mix";
        case FamilyKind::epsilon_mix: return "epsmix";
    }
    return "unknown";
}

FamilySpec FamilySpec::exponential(double alpha) {
    FamilySpec s{FamilyKind::exponential, alpha, 0.0, 0, 0.0};
    s.validate();
    return s;
}

FamilySpec FamilySpec::gamma(double alpha, int n) {
    FamilySpec s{FamilyKind::gamma, alpha, 0.0, n, 0.0};
    s.validate();
    return s;
}

FamilySpec FamilySpec::two_exponential_mix(double alpha, double beta) {
    FamilySpec s{FamilyKind::two_exponential_mix, alpha, beta, 0, 0.0};
    s.validate();
    return s;
}

FamilySpec FamilySpec::epsilon_mix(double epsilon, double alpha, int n) {
    FamilySpec s{FamilyKind::epsilon_mix, alpha, 0.0, n, epsilon};
    s.validate();
    return s;
}

void FamilySpec::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("family parameter alpha must be > 0");
    if (kind == FamilyKind::gamma || kind == FamilyKind::epsilon_mix) {
        if (n < 0 || n > kMaxFamilyOrder) {
            throw std::invalid_argument("family order n must lie in [0, " + std::to_string(kMaxFamilyOrder) + "]");
        }
    }
    if (kind == FamilyKind::two_exponential_mix) {
        if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("family parameter beta must be > 0");
        if (alpha == beta) throw std::invalid_argument("two_exponential_mix needs alpha != beta");
    }
    if (kind == FamilyKind::epsilon_mix && !(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("family parameter epsilon must lie in [0, 1]");
    }
}

std::string FamilySpec::describe() const {
    std::ostringstream os;
    os << to_string(kind) << "(alpha=" << alpha;
    if (kind == FamilyKind::two_exponential_mix) os << ",beta=" << beta;
    if (kind == FamilyKind::epsilon_mix) os << ",epsilon=" << epsilon;
    if (kind == FamilyKind::gamma || kind == FamilyKind::epsilon_mix) os << ",n=" << n;
    os << ")";
    return os.str();
}

double family_density(const FamilySpec& spec, double x) {
    switch (spec.kind) {
        case FamilyKind::exponential:
            return spec.alpha * std::exp(-spec.alpha * x);
        case FamilyKind::gamma:
            return gamma_density(spec.alpha, spec.n, x);
        case FamilyKind::two_exponential_mix:
            return 0.5 * (spec.alpha * std::exp(-spec.alpha * x) + spec.beta * std::exp(-spec.beta * x));
        case FamilyKind::epsilon_mix:
            return (1.0 - spec.epsilon) * spec.alpha * std::exp(-spec.alpha * x) +
                   spec.epsilon * gamma_density(spec.alpha, spec.n, x);
    }
    return 0.0;
}

Density sample_family(const FamilySpec& spec, const Grid& grid) {
    spec.validate();
    return Density::sample(grid, [&](double x) { return family_density(spec, x); });
}

double family_mean(const FamilySpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case FamilyKind::exponential: return 1.0 / spec.alpha;
        case FamilyKind::gamma: return (spec.n + 1) / spec.alpha;
        case FamilyKind::two_exponential_mix: return 0.5 * (1.0 / spec.alpha + 1.0 / spec.beta);
        case FamilyKind::epsilon_mix: return (1.0 + spec.epsilon * spec.n) / spec.alpha;
    }
    return 0.0;
}

Grid default_grid(const FamilySpec& spec) {
    return make_grid(kDefaultGridPoints, kDefaultDomainMeans * family_mean(spec));
}

double closed_form_T_value(const FamilySpec& spec, double x) {
    spec.validate();
    switch (spec.kind) {
        case FamilyKind::exponential:
            throw std::invalid_argument("exponential densities are fixed points; use sample_family");
        case FamilyKind::gamma:
            return gamma_first_iterate(spec.alpha, spec.n, x);
        case FamilyKind::two_exponential_mix:
            return mix_first_iterate(spec.alpha, spec.beta, x);
        case FamilyKind::epsilon_mix:
            return epsilon_mix_first_iterate(spec.epsilon, spec.alpha, spec.n, x);
    }
    return 0.0;
}

Density closed_form_T(const FamilySpec& spec, const Grid& grid) {
    if (spec.kind == FamilyKind::exponential) {
        throw std::invalid_argument("exponential densities are fixed points; use sample_family");
    }
    return Density::sample(grid, [&](double x) { return closed_form_T_value(spec, x); });
}

ContractionCheck contraction_check(const FamilySpec& spec, const Grid& grid) {
    const Density y = sample_family(spec, grid);
    const Density target = sample_family(FamilySpec::exponential(1.0 / family_mean(spec)), grid);
    const Density image = spec.kind == FamilyKind::exponential ? y : closed_form_T(spec, grid);
    ContractionCheck c;
    c.d_before = l1_distance(y, target);
    c.d_after = l1_distance(image, target);
    c.degenerate = c.d_before <= kDegenerateDistance;
    c.contracted = !c.degenerate && c.d_after < c.d_before;
    return c;
}

std::vector<FamilySpec> parameter_lattice() {
    const double alphas[] = {0.5, 1.0, 2.0};
    const double betas[] = {1.5, 3.0};
    const int orders[] = {0, 1, 2, 5};
    const double epsilons[] = {0.25, 0.5, 0.75};
    std::vector<FamilySpec> out;
    for (double a : alphas) {
        for (int n : orders) out.push_back(FamilySpec::gamma(a, n));
        for (double b : betas) out.push_back(FamilySpec::two_exponential_mix(a, b));
        for (int n : orders) {
            for (double e : epsilons) out.push_back(FamilySpec::epsilon_mix(e, a, n));
        }
    }
    return out;
}

Density triangle_density(const Grid& grid, double mean, Quadrature rule) {
    if (!(mean > 0.0)) throw std::invalid_argument("triangle mean must be > 0");
    const Density raw = Density::sample(grid, [mean](double x) {
        return std::max(0.0, 1.0 - std::fabs(x - mean) / mean) / mean;
    });
    const double norm = quad_norm(raw, rule);
    if (!(norm > 0.0)) throw DegenerateInput("triangle is not resolved by the grid");
    return scale(raw, 1.0 / norm);
}

}  // namespace wealth
