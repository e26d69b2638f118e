#include "superdir/directivity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "superdir/errors.hpp"
#include "superdir/quadrature.hpp"

namespace superdir {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRealnessTol = 1e-9;

void check_nonzero(const ExcitationVector& j) {
    if (j.squaredNorm() == 0.0) throw ZeroExcitation("excitation vector is all zeros");
}

double real_part_checked(Complex value, const char* what) {
    if (std::abs(value.imag()) > kRealnessTol * std::abs(value.real())) {
        std::ostringstream msg;
        msg << what << " should be real but has imaginary part " << value.imag()
            << " (real part " << value.real() << ")";
        throw NumericalInconsistency(msg.str());
    }
    return value.real();
}

DirectivityResult make_result(double linear, const Direction& dir, const ArrayGeometry& geom,
                              double condition_estimate) {
    return {linear, to_db(linear), dir, geom, condition_estimate};
}

}  // namespace

double to_db(double linear) { return 10.0 * std::log10(linear); }

ExcitationVector normalize_weights(const ExcitationVector& w) {
    const double norm = w.norm();
    if (norm == 0.0) throw ZeroExcitation("cannot normalize the zero vector");
    ExcitationVector out = w / norm;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (std::abs(out(i)) > 0.0) {
            const Complex rotation = std::conj(out(i)) / std::abs(out(i));
            out *= rotation;
            out(i) = Complex(std::abs(out(i)), 0.0);
            break;
        }
    }
    return out;
}

DirectivityResult directivity(const CouplingMatrix& coupling, const ExcitationVector& j,
                              const Direction& dir) {
    const ArrayGeometry& geom = coupling.geometry();
    check_dimension(j, geom);
    check_nonzero(j);

    const double numerator = std::norm(array_output(j, geom, dir));
    const Eigen::VectorXcd cj = coupling.entries().cast<Complex>() * j;
    const double denominator = real_part_checked(j.dot(cj), "j^H C j");
    return make_result(numerator / denominator, dir, geom, coupling.condition_estimate());
}

DirectivityResult directivity(const ExcitationVector& j, const ArrayGeometry& geom,
                              const Direction& dir) {
    return directivity(CouplingMatrix(geom), j, dir);
}

double directivity_quadrature_oracle(const ExcitationVector& j, const ArrayGeometry& geom,
                                     const Direction& dir, int quad_order, double rel_tol) {
    check_dimension(j, geom);
    check_nonzero(j);
    if (quad_order < 8) throw ConfigError("quad_order", "must be >= 8");

    auto power = [&](double phi, double theta) {
        return std::norm(array_output(j, geom, Direction(phi, theta)));
    };
    const double coarse = integrate_half_space(power, quad_order);
    const double fine = integrate_half_space(power, 2 * quad_order);
    const double change = std::abs(fine - coarse) / std::abs(fine);
    if (change > rel_tol) {
        std::ostringstream msg;
        msg << "directivity oracle denominator changed by " << change
            << " (relative) when doubling order " << quad_order;
        throw QuadratureNotConverged(msg.str(), change);
    }
    return kTwoPi * power(dir.phi(), dir.theta()) / fine;
}

OptimalExcitation optimal_excitation(const CouplingMatrix& coupling, const Direction& dir) {
    const ArrayGeometry& geom = coupling.geometry();
    const Eigen::VectorXcd a = steering_vector(geom, dir);
    const Eigen::VectorXcd y = coupling.whiten(a);
    const Eigen::VectorXcd w = coupling.unwhiten(y);

    // a^H C^{-1} a; y^H y is the same quantity with the realness built in.
    real_part_checked(a.dot(w), "a^H C^-1 a");
    const double linear = y.squaredNorm();

    return {normalize_weights(w), make_result(linear, dir, geom, coupling.condition_estimate()),
            WeightNormalization::unit_norm_first_real_positive};
}

OptimalExcitation optimal_excitation(const ArrayGeometry& geom, const Direction& dir) {
    return optimal_excitation(CouplingMatrix(geom), dir);
}

DirectivityResult max_directivity(const CouplingMatrix& coupling, const Direction& dir) {
    return optimal_excitation(coupling, dir).achieved;
}

DirectivityResult max_directivity(const ArrayGeometry& geom, const Direction& dir) {
    return max_directivity(CouplingMatrix(geom), dir);
}

EigenCrosscheck eigen_crosscheck(const CouplingMatrix& coupling, const Direction& dir, double tol,
                                 int max_iterations) {
    using Vec = CouplingMatrix::ExtendedVector;
    using Real = long double;
    const Vec a = steering_vector(coupling.geometry(), dir).cast<std::complex<Real>>();
    const Vec whitened_a = coupling.whiten_extended(a);

    // B x = L^{-1} a (a^H L^{-T} x), carried out in extended precision.
    auto apply = [&](const Vec& x) -> Vec {
        return whitened_a * a.dot(coupling.unwhiten_extended(x));
    };

    Vec x = whitened_a.normalized();
    Real lambda = 0;
    int iterations = 0;
    bool converged = false;
    while (iterations < max_iterations) {
        ++iterations;
        const Vec bx = apply(x);
        const Real next = x.dot(bx).real();
        const Real bx_norm = bx.norm();
        if (bx_norm == 0) throw PowerIterationStalled("power iteration hit the null space");
        x = bx / bx_norm;
        if (iterations > 1 && std::abs(next - lambda) <= static_cast<Real>(tol) * std::abs(next)) {
            lambda = next;
            converged = true;
            break;
        }
        lambda = next;
    }
    if (!converged) {
        throw PowerIterationStalled("power iteration did not reach relative tolerance after " +
                                    std::to_string(max_iterations) + " iterations");
    }

    // One deflation step: whatever survives B - lambda x x^H is the next
    // eigenvalue. Fixed start vector keeps the estimate deterministic.
    const Eigen::Index size = x.size();
    Vec z(size);
    for (Eigen::Index k = 0; k < size; ++k) {
        z(k) = std::polar<Real>(1 + Real(0.5) * static_cast<Real>(k % 3),
                                Real(0.7) * static_cast<Real>(k));
    }
    z -= x * x.dot(z);
    Real second = 0;
    if (z.norm() > 0) {
        z.normalize();
        for (int k = 0; k < 50; ++k) {
            const Vec dz = apply(z) - lambda * x * x.dot(z);
            second = dz.norm();
            if (second == 0) break;
            z = dz / second;
        }
    }

    const Eigen::VectorXcd v0 = coupling.unwhiten_extended(x).cast<Complex>();
    return {static_cast<double>(lambda), normalize_weights(v0), static_cast<double>(second),
            iterations};
}

double average_max_directivity(const CouplingMatrix& coupling, int quad_order, double rel_tol) {
    if (quad_order < 8) throw ConfigError("quad_order", "must be >= 8");
    const ArrayGeometry& geom = coupling.geometry();
    auto g_star = [&](double phi, double theta) {
        return coupling.whiten(steering_vector(geom, Direction(phi, theta))).squaredNorm();
    };
    const double coarse = integrate_half_space(g_star, quad_order) / kTwoPi;
    const double fine = integrate_half_space(g_star, 2 * quad_order) / kTwoPi;
    const double change = std::abs(fine - coarse) / std::abs(fine);
    if (change > rel_tol) {
        std::ostringstream msg;
        msg << "half-space mean changed by " << change << " (relative) when doubling order "
            << quad_order;
        throw QuadratureNotConverged(msg.str(), change);
    }
    return fine;
}

}  // namespace superdir
