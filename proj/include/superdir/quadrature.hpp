#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace superdir {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` points on [lo, hi]. Exact for
/// polynomials of degree up to 2 * order - 1.
[[nodiscard]] QuadratureRule gauss_legendre(int order, double lo = -1.0, double hi = 1.0);

/**
 * Tensor-product Gauss-Legendre integral of f(phi, theta) * sin(theta) over
 * the half space [0, pi] x [0, pi]. `f` may return a real or complex value.
 */
template <typename F>
auto integrate_half_space(F&& f, int order) {
    const QuadratureRule rule = gauss_legendre(order, 0.0, std::numbers::pi);
    using Value = decltype(f(0.0, 0.0));
    Value total{};
    for (std::size_t t = 0; t < rule.nodes.size(); ++t) {
        const double theta = rule.nodes[t];
        Value inner{};
        for (std::size_t p = 0; p < rule.nodes.size(); ++p) {
            inner += rule.weights[p] * f(rule.nodes[p], theta);
        }
        total += rule.weights[t] * std::sin(theta) * inner;
    }
    return total;
}

}  // namespace superdir
