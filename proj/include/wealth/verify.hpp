#pragma once

// Executable property suite for the operator: conservation laws, the
// exponential fixed point, the Lipschitz bound, norm regimes, absence of
// 2-cycles and the derivative structure of T y. Every check returns the
// measured quantity next to its pinned threshold.

#include <cstdint>
#include <string>
#include <vector>

#include "wealth/agent_sim.hpp"
#include "wealth/grid.hpp"
#include "wealth/operator.hpp"

namespace wealth {

struct VerifyOptions {
    std::size_t n_points = kDefaultGridPoints;
    // Domain for mean-1 inputs; the fixed-point check uses x_max / alpha.
    double x_max = kDefaultDomainMeans;
    OperatorOptions op;
    std::uint64_t seed = 20120;
    std::size_t samples = 50;
};

enum class Relation { at_most, at_least };

struct PropertyResult {
    std::string name;
    Relation relation = Relation::at_most;
    double measured = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string detail;
};

PropertyResult make_result(std::string name, Relation relation, double measured, double threshold,
                           std::string detail = {});

struct VerifyReport {
    std::vector<PropertyResult> properties;

    bool all_passed() const;
    std::vector<std::string> failed() const;
};

/// Smooth random density of quadrature norm `norm`: a mixture of one to
/// three gamma-shaped bumps x^k e^{-a x} with means in [0.5, 1.5].
Density random_density(const Grid& grid, Xoshiro256& rng, double norm = 1.0);

/// PDF within a random distance 10^-6 .. 10^-1 of an exponential.
Density near_exponential_density(const Grid& grid, Xoshiro256& rng);

inline constexpr double kFixedPointTolerance = 1e-6;
inline constexpr double kNormSquaringTolerance = 1e-7;
inline constexpr double kMeanDriftTolerance = 1e-5;
inline constexpr double kMeanCheckMaxDefect = 1e-10;
inline constexpr double kLipschitzConstant = 2.0;
inline constexpr double kLipschitzSlack = 1e-6;
inline constexpr double kTrichotomyTolerance = 1e-6;
inline constexpr std::size_t kTrichotomySteps = 5;
inline constexpr double kTwoCyclePremise = 1e-4;
inline constexpr double kTwoCycleConclusion = 1e-3;
inline constexpr double kOdeFixedPointMax = 1e-4;
inline constexpr double kOdeNonFixedPointMin = 1e-2;
inline constexpr double kSignPatternSlack = 1e-6;
inline constexpr double kRecurrenceTolerance = 1e-3;
// Relative rise allowed between adjacent nodes of T y. Near x = 0, T y is
// flat to high order when y vanishes there, and the local error of the
// corrected end rule can exceed the true decrease.
inline constexpr double kMonotoneSlack = 1e-9;
inline constexpr double kMethodAgreement = 1e-10;

PropertyResult check_fixed_point(const VerifyOptions& options);
PropertyResult check_norm_squaring(const VerifyOptions& options);
PropertyResult check_mean_conservation(const VerifyOptions& options);
/// {bound, non-vacuity}.
std::vector<PropertyResult> check_lipschitz(const VerifyOptions& options);
PropertyResult check_norm_trichotomy(const VerifyOptions& options);
PropertyResult check_no_two_cycles(const VerifyOptions& options);
/// {fixed point residual small, triangle residual large}.
std::vector<PropertyResult> check_ode_residual(const VerifyOptions& options);
/// {sign pattern of derivatives, recurrence at zero}.
std::vector<PropertyResult> check_complete_monotonicity(const VerifyOptions& options);
/// {T y >= 0, T y nonincreasing}.
std::vector<PropertyResult> check_output_shape(const VerifyOptions& options);
PropertyResult check_direct_vs_fft(const VerifyOptions& options);

VerifyReport run_property_suite(const VerifyOptions& options = {});

}  // namespace wealth
