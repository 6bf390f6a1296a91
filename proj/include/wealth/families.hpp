#pragma once

// Analytic wealth densities with known first iterates under T. They serve
// both as initial conditions and as exact oracles for the numerical operator.
//
//   exponential(a)            a e^{-a x}
//   gamma(a, n)               a^{n+1} x^n e^{-a x} / n!
//   two_exponential_mix(a, b) (a e^{-a x} + b e^{-b x}) / 2
//   epsilon_mix(e, a, n)      (1 - e) a e^{-a x} + e a^{n+1} x^n e^{-a x} / n!

#include <string>
#include <vector>

#include "wealth/grid.hpp"

namespace wealth {

enum class FamilyKind { exponential, gamma, two_exponential_mix, epsilon_mix };

const char* to_string(FamilyKind kind);

struct FamilySpec {
    FamilyKind kind = FamilyKind::exponential;
    double alpha = 1.0;
    double beta = 0.0;
    int n = 0;
    double epsilon = 0.0;

    static FamilySpec exponential(double alpha);
    static FamilySpec gamma(double alpha, int n);
    static FamilySpec two_exponential_mix(double alpha, double beta);
    static FamilySpec epsilon_mix(double epsilon, double alpha, int n);

    /// Throws std::invalid_argument on a parameter outside the family.
    void validate() const;

    /// Short human-readable tag, e.g. "gamma(alpha=2,n=1)".
    std::string describe() const;
};

/// Pointwise density value of the family at x >= 0.
double family_density(const FamilySpec& spec, double x);

Density sample_family(const FamilySpec& spec, const Grid& grid);

double family_mean(const FamilySpec& spec);

/// Grid with default resolution on [0, 40 * mean].
Grid default_grid(const FamilySpec& spec);

/// Exact (T y)(x) for the non-exponential families.
double closed_form_T_value(const FamilySpec& spec, double x);

/// Samples closed_form_T_value; rejects the exponential kind (it is its own
/// image, see sample_family).
Density closed_form_T(const FamilySpec& spec, const Grid& grid);

struct ContractionCheck {
    double d_before = 0.0;
    double d_after = 0.0;
    bool contracted = false;
    // The family already is an exponential: both distances are at rounding
    // level and `contracted` carries no information.
    bool degenerate = false;
};

inline constexpr double kDegenerateDistance = 1e-9;

/// Distance to the mean-matched exponential before and after one exact
/// application of T.
ContractionCheck contraction_check(const FamilySpec& spec, const Grid& grid);

/// The fixed sweep: alpha in {0.5, 1, 2}, beta in {1.5, 3}, n in {0, 1, 2, 5},
/// epsilon in {0.25, 0.5, 0.75}, over gamma, two_exponential_mix and
/// epsilon_mix.
std::vector<FamilySpec> parameter_lattice();

/// Symmetric triangle on [0, 2 mean] peaking at `mean`, divided by its
/// quadrature norm so that it sits on the unit sphere to rounding.
Density triangle_density(const Grid& grid, double mean, Quadrature rule = Quadrature::gregory);

}  // namespace wealth
