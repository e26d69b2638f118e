#pragma once

#include <Eigen/Dense>

#include "superdir/array_model.hpp"

namespace superdir {

/// sin(pi x) / (pi x), with sinc(0) = 1.
[[nodiscard]] double sinc(double x);

/// Raw sinc-kernel coupling entries without any factorization. Entry (i, j)
/// is sinc(2 sqrt(dx^2 (n_i - n_j)^2 + dz^2 (m_i - m_j)^2)).
[[nodiscard]] Eigen::MatrixXd coupling_entries(const ArrayGeometry& geom);

/**
 * Coupling matrix C of a URA together with its Cholesky factor.
 *
 * Factorization is first attempted on C as is. If that fails a diagonal
 * jitter of 1e-14 * MN is added and escalated by x100 up to 1e-8 * MN; the
 * amount actually used is reported by jitter_applied(). Construction throws
 * FactorizationFailure when even the largest jitter does not help.
 *
 * The factor is computed from entries evaluated in extended precision
 * (long double). At deep sub-wavelength spacing the smallest eigenvalues of
 * C sit near 1e-15, where double rounding of the sinc entries alone would
 * move G* by a tenth of a dB.
 *
 * Immutable after construction.
 */
class CouplingMatrix {
public:
    explicit CouplingMatrix(const ArrayGeometry& geom);

    [[nodiscard]] const ArrayGeometry& geometry() const { return geom_; }
    [[nodiscard]] const Eigen::MatrixXd& entries() const { return entries_; }
    /// Lower-triangular L with L L^T = entries() + jitter_applied() I.
    [[nodiscard]] const Eigen::MatrixXd& cholesky_factor() const { return factor_; }
    /// 1-norm condition number estimate of the factored matrix, >= 1.
    [[nodiscard]] double condition_estimate() const { return condition_estimate_; }
    [[nodiscard]] double jitter_applied() const { return jitter_; }

    /// y = L^{-1} b
    [[nodiscard]] Eigen::VectorXcd whiten(const Eigen::VectorXcd& b) const;
    /// x = L^{-T} y
    [[nodiscard]] Eigen::VectorXcd unwhiten(const Eigen::VectorXcd& y) const;
    using ExtendedVector = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, 1>;
    /// Same triangular solves without rounding the result back to double.
    [[nodiscard]] ExtendedVector whiten_extended(const ExtendedVector& b) const;
    [[nodiscard]] ExtendedVector unwhiten_extended(const ExtendedVector& y) const;

    /// x = C^{-1} b through the two triangular solves.
    [[nodiscard]] Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;

private:
    ArrayGeometry geom_;
    Eigen::MatrixXd entries_;
    Eigen::MatrixXd factor_;
    Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic> solve_factor_;
    double condition_estimate_ = 1.0;
    double jitter_ = 0.0;
};

[[nodiscard]] inline CouplingMatrix coupling_matrix(const ArrayGeometry& geom) {
    return CouplingMatrix(geom);
}

/**
 * Independent check of a single coupling entry: the normalized half-space
 * integral (1 / 2 pi) of exp(j 2 pi (fx dn + fz dm)) sin(theta), evaluated by
 * tensor Gauss-Legendre quadrature at `quad_order` and at twice that order.
 *
 * Throws QuadratureNotConverged if the two orders differ by more than `tol`
 * and NumericalInconsistency if the imaginary part exceeds 1e-9. Returns the
 * higher-order value.
 */
[[nodiscard]] double coupling_entry_oracle(const ArrayGeometry& geom, ElementIndex i,
                                           ElementIndex j, int quad_order = 64,
                                           double tol = 1e-10);

}  // namespace superdir
