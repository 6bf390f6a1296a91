#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wealth/errors.hpp"

namespace wealth {

/// Quadrature rule used for every integral over sampled data.
///
/// `gregory` is the composite trapezoid rule with Gregory endpoint
/// corrections over five nodes per end. It is exact for quintics and
/// sixth-order accurate on smooth integrands. `trapezoid` is the plain
/// composite rule, second order, kept for convergence studies.
enum class Quadrature { trapezoid, gregory };

const char* to_string(Quadrature rule);
Quadrature quadrature_from_string(const std::string& name);

inline constexpr std::size_t kMinGridPoints = 16;
inline constexpr double kDefaultTailEpsilon = 1e-8;
inline constexpr std::size_t kDefaultGridPoints = 4097;
inline constexpr double kDefaultDomainMeans = 40.0;

/// Uniform grid on [0, x_max] with nodes x_i = i * spacing.
class Grid {
public:
    Grid(std::size_t n_points, double x_max);

    std::size_t size() const { return n_points_; }
    double x_max() const { return x_max_; }
    double spacing() const { return spacing_; }
    double node(std::size_t i) const { return (*nodes_)[i]; }
    std::span<const double> nodes() const { return *nodes_; }

    /// Quadrature weights for the full grid under `rule`.
    std::span<const double> weights(Quadrature rule) const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.n_points_ == b.n_points_ && a.x_max_ == b.x_max_;
    }

private:
    std::size_t n_points_;
    double x_max_;
    double spacing_;
    std::shared_ptr<const std::vector<double>> nodes_;
    std::shared_ptr<const std::vector<double>> trapezoid_weights_;
    std::shared_ptr<const std::vector<double>> gregory_weights_;
};

Grid make_grid(std::size_t n_points, double x_max);

/// Integral of samples f[0..K] on a uniform mesh with step h. Segments that
/// are too short for the endpoint corrections fall back to closed
/// Newton-Cotes rules on all K + 1 nodes.
double integrate_uniform(std::span<const double> f, double h, Quadrature rule);

/// Unit-spacing weights for K intervals (K + 1 nodes).
std::vector<double> unit_weights(std::size_t intervals, Quadrature rule);

/// Fewest intervals that take the corrected composite rule.
std::size_t min_corrected_intervals(Quadrature rule);

/// Endpoint deficits d_m: the weight of node m from either end is (1 - d_m).
std::span<const double> endpoint_deficits(Quadrature rule);

/// Sampled nonnegative function on a Grid. Immutable after construction.
class Density {
public:
    Density(Grid grid, std::vector<double> values);

    static Density zero(const Grid& grid);

    template <class F>
    static Density sample(const Grid& grid, F&& f) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
        return Density(grid, std::move(v));
    }

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double max_value() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

Density scale(const Density& y, double c);

struct MomentSummary {
    double norm = 0.0;
    double mean = 0.0;
    double mass_defect = 0.0;
};

double quad_norm(const Density& y, Quadrature rule = Quadrature::gregory);

/// Unnormalized first moment, the mean richness of a PDF. Throws
/// DegenerateInput when the norm vanishes.
double quad_mean(const Density& y, Quadrature rule = Quadrature::gregory);

double l1_distance(const Density& y, const Density& w, Quadrature rule = Quadrature::gregory);

/// Mass beyond x_max, from an exponential tail fitted to the last tenth of
/// the nodes. Zero for compactly supported samples; +inf if the tail is not
/// decaying at all.
double tail_mass_estimate(const Density& y);

MomentSummary moments(const Density& y, Quadrature rule = Quadrature::gregory);

/// values[n-1] <= tail_epsilon * max(values).
bool truncation_healthy(const Density& y, double tail_epsilon = kDefaultTailEpsilon);

}  // namespace wealth
