#include "wealth/finite_difference.hpp"

#include <cmath>
#include <stdexcept>

namespace wealth::fd {

std::vector<double> stencil_weights(double z, std::span<const double> nodes, int order) {
    const std::size_t n = nodes.size();
    if (order < 0 || static_cast<std::size_t>(order) >= n) {
        throw std::invalid_argument("stencil needs more nodes than the derivative order");
    }
    const auto m = static_cast<std::size_t>(order);
    // c[j][k]: weight of node j for the k-th derivative.
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
    return w;
}

InteriorDerivative central_derivative(const Density& y, int order) {
    const double h = y.grid().spacing();
    const auto v = y.values();
    InteriorDerivative out;
    switch (order) {
        case 1:
            out.first_node = 1;
            for (std::size_t i = 1; i + 1 < v.size(); ++i) out.values.push_back((v[i + 1] - v[i - 1]) / (2.0 * h));
            break;
        case 2:
            out.first_node = 1;
            for (std::size_t i = 1; i + 1 < v.size(); ++i) {
                out.values.push_back((v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h));
            }
            break;
        case 3:
            out.first_node = 2;
            for (std::size_t i = 2; i + 2 < v.size(); ++i) {
                out.values.push_back((v[i + 2] - 2.0 * v[i + 1] + 2.0 * v[i - 1] - v[i - 2]) / (2.0 * h * h * h));
            }
            break;
        default:
            throw std::invalid_argument("central_derivative supports orders 1..3");
    }
    return out;
}

double derivative_at_zero(const Density& y, int order, std::size_t points) {
    if (order == 0) return y[0];
    if (points > y.size()) throw std::invalid_argument("stencil longer than the grid");
    std::vector<double> nodes(points);
    for (std::size_t j = 0; j < points; ++j) nodes[j] = y.grid().node(j);
    const auto w = stencil_weights(0.0, nodes, order);
    double d = 0.0;
    for (std::size_t j = 0; j < points; ++j) d += w[j] * y[j];
    return d;
}

}  // namespace wealth::fd
