#include "superdir/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

#include "superdir/errors.hpp"
#include "superdir/quadrature.hpp"

namespace superdir {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kFirstJitter = 1e-14;
constexpr double kLastJitter = 1e-8;
constexpr double kJitterGrowth = 100.0;

template <typename T>
T sinc_impl(T x) {
    const T px = std::numbers::pi_v<T> * x;
    if (std::abs(x) < T(1e-6)) {
        const T px2 = px * px;
        return T(1) - px2 / T(6) + px2 * px2 / T(120);
    }
    return std::sin(px) / px;
}

template <typename T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> build_entries(const ArrayGeometry& geom) {
    const int rows = geom.rows();
    const int cols = geom.cols();

    // One kernel value per index-difference pair (|dm|, |dn|).
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> kernel(rows, cols);
    for (int dm = 0; dm < rows; ++dm) {
        for (int dn = 0; dn < cols; ++dn) {
            const T x = static_cast<T>(geom.dx()) * dn;
            const T z = static_cast<T>(geom.dz()) * dm;
            kernel(dm, dn) = sinc_impl<T>(T(2) * std::sqrt(x * x + z * z));
        }
    }

    const Eigen::Index size = geom.element_count();
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> c(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        const ElementIndex ei = element_index(geom, i);
        for (Eigen::Index j = 0; j < size; ++j) {
            const ElementIndex ej = element_index(geom, j);
            c(i, j) = kernel(std::abs(ei.m - ej.m), std::abs(ei.n - ej.n));
        }
    }
    return c;
}

}  // namespace

double sinc(double x) { return sinc_impl(x); }

Eigen::MatrixXd coupling_entries(const ArrayGeometry& geom) { return build_entries<double>(geom); }

CouplingMatrix::CouplingMatrix(const ArrayGeometry& geom)
    : geom_(geom), entries_(coupling_entries(geom)) {
    using ExtMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const ExtMatrix extended = build_entries<long double>(geom);
    const double scale = static_cast<double>(geom.element_count());

    double jitter = 0.0;
    double last_rcond = 0.0;
    for (;;) {
        ExtMatrix shifted = extended;
        shifted.diagonal().array() += static_cast<long double>(jitter);
        Eigen::LLT<ExtMatrix> llt(shifted);
        if (llt.info() == Eigen::Success) {
            const ExtMatrix lower = llt.matrixL();
            factor_ = lower.cast<double>();
            solve_factor_ = lower.cast<std::complex<long double>>();
            last_rcond = static_cast<double>(llt.rcond());
            jitter_ = jitter;
            break;
        }
        last_rcond = static_cast<double>(llt.rcond());
        if (jitter >= kLastJitter * scale * (1.0 - 1e-9)) {
            std::ostringstream msg;
            msg << "coupling matrix for " << geom.rows() << "x" << geom.cols()
                << " array at dx=" << geom.dx() << ", dz=" << geom.dz()
                << " is not positive definite even with diagonal jitter " << jitter;
            const double cond = last_rcond > 0.0 ? 1.0 / last_rcond
                                                 : std::numeric_limits<double>::infinity();
            throw FactorizationFailure(msg.str(), cond);
        }
        jitter = jitter == 0.0 ? kFirstJitter * scale : jitter * kJitterGrowth;
    }

    condition_estimate_ = last_rcond > 0.0 ? std::max(1.0, 1.0 / last_rcond)
                                           : std::numeric_limits<double>::infinity();
}

CouplingMatrix::ExtendedVector CouplingMatrix::whiten_extended(const ExtendedVector& b) const {
    return solve_factor_.triangularView<Eigen::Lower>().solve(b);
}

CouplingMatrix::ExtendedVector CouplingMatrix::unwhiten_extended(const ExtendedVector& y) const {
    return solve_factor_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Eigen::VectorXcd CouplingMatrix::whiten(const Eigen::VectorXcd& b) const {
    return whiten_extended(b.cast<std::complex<long double>>()).cast<Complex>();
}

Eigen::VectorXcd CouplingMatrix::unwhiten(const Eigen::VectorXcd& y) const {
    return unwhiten_extended(y.cast<std::complex<long double>>()).cast<Complex>();
}

Eigen::VectorXcd CouplingMatrix::solve(const Eigen::VectorXcd& b) const {
    return unwhiten(whiten(b));
}

double coupling_entry_oracle(const ArrayGeometry& geom, ElementIndex i, ElementIndex j,
                             int quad_order, double tol) {
    if (quad_order < 8) throw ConfigError("quad_order", "must be >= 8");

    const double dn = static_cast<double>(i.n - j.n);
    const double dm = static_cast<double>(i.m - j.m);
    auto integrand = [&](double phi, double theta) {
        const double fx = geom.dx() * std::sin(theta) * std::cos(phi);
        const double fz = geom.dz() * std::cos(theta);
        return std::polar(1.0, 2.0 * kPi * (fx * dn + fz * dm));
    };

    const Complex coarse = integrate_half_space(integrand, quad_order) / (2.0 * kPi);
    const Complex fine = integrate_half_space(integrand, 2 * quad_order) / (2.0 * kPi);

    const double change = std::abs(fine - coarse);
    if (change > tol) {
        std::ostringstream msg;
        msg << "coupling oracle changed by " << change << " when doubling order "
            << quad_order;
        throw QuadratureNotConverged(msg.str(), change);
    }
    if (std::abs(fine.imag()) >= 1e-9) {
        std::ostringstream msg;
        msg << "coupling oracle has imaginary part " << fine.imag();
        throw NumericalInconsistency(msg.str());
    }
    return fine.real();
}

}  // namespace superdir
