#include "superdir/quadrature.hpp"

#include <stdexcept>

namespace superdir {

QuadratureRule gauss_legendre(int order, double lo, double hi) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");

    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);

    const double half_width = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    const int half = (order + 1) / 2;

    // Newton iteration on P_order from the Chebyshev-like initial guess; the
    // roots are symmetric so only half of them are computed.
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            derivative = order * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / derivative;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        derivative = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);

        rule.nodes[i] = mid - half_width * x;
        rule.nodes[order - 1 - i] = mid + half_width * x;
        rule.weights[i] = half_width * w;
        rule.weights[order - 1 - i] = half_width * w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = mid;
    return rule;
}

}  // namespace superdir
