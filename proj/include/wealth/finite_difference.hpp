#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wealth/grid.hpp"

namespace wealth::fd {

/// Weights w_j such that sum_j w_j f(nodes[j]) approximates f^{(order)}(z)
/// (Fornberg's recursion, arbitrary node placement).
std::vector<double> stencil_weights(double z, std::span<const double> nodes, int order);

/// Central-difference derivative of order 1..3 at the interior nodes that
/// admit a symmetric stencil. Entry k corresponds to node first_node + k.
struct InteriorDerivative {
    std::size_t first_node = 0;
    std::vector<double> values;
};

InteriorDerivative central_derivative(const Density& y, int order);

/// One-sided derivative at x = 0 from the first `points` nodes.
double derivative_at_zero(const Density& y, int order, std::size_t points = 6);

}  // namespace wealth::fd
