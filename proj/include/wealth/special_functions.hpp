#pragma once

// Upper incomplete gamma on the integer ladder, E1, and Gamma at
// half-integers. These are the only special values the closed-form first
// iterates need, so each one is a finite formula or a short, well-conditioned
// expansion rather than a general-purpose algorithm.

namespace wealth::special {

// Largest integer order accepted by the incomplete gamma routines (covers
// Gamma(2n + 1, .) for family orders n <= 80).
inline constexpr int kMaxGammaOrder = 161;
inline constexpr int kMaxFamilyOrder = 80;

// Crossover between the E1 power series and its continued fraction.
inline constexpr double kE1SeriesLimit = 1.5;

/// Gamma(s, x) for integer s >= 1:
///   Gamma(s, x) = (s - 1)! e^{-x} sum_{k=0}^{s-1} x^k / k!
/// with the sum accumulated in ascending k. Large x switches to a
/// log-scaled evaluation of the same sum. Throws for s < 1 (Gamma(0, x) is
/// exp_integral_e1).
double upper_incomplete_gamma(int s, double x);

/// log Gamma(s, x) for integer s >= 1, finite wherever Gamma(s, x) underflows.
double log_upper_incomplete_gamma(int s, double x);

/// E1(x) = Gamma(0, x), x > 0. Series below kE1SeriesLimit, continued
/// fraction above.
double exp_integral_e1(double x);

// The two branches, exposed so their agreement band can be tested.
double exp_integral_e1_series(double x);
double exp_integral_e1_continued_fraction(double x);

/// Gamma(k + 1/2) by the exact recurrence from sqrt(pi).
double gamma_half_integer(int k);
double log_gamma_half_integer(int k);

/// n! exactly for n <= 20, exp(lgamma) above.
double factorial(int n);
double log_factorial(int n);

}  // namespace wealth::special
