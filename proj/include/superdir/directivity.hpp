#pragma once

#include <Eigen/Dense>

#include "superdir/array_model.hpp"
#include "superdir/coupling.hpp"

namespace superdir {

/// 10 log10 of a power ratio.
[[nodiscard]] double to_db(double linear);

struct DirectivityResult {
    double linear;
    double db;
    Direction dir;
    ArrayGeometry geom;
    double condition_estimate;
};

/// Scaling applied to optimal weights. The Rayleigh quotient is scale free,
/// so this only fixes a representative: unit Euclidean norm with the first
/// nonzero entry rotated onto the positive real axis.
enum class WeightNormalization { unit_norm_first_real_positive };

struct OptimalExcitation {
    ExcitationVector weights;
    DirectivityResult achieved;
    WeightNormalization normalization = WeightNormalization::unit_norm_first_real_positive;
};

/// Directivity of excitation j towards dir: |a^H j|^2 / (j^H C j).
/// Throws ZeroExcitation or DimensionMismatch.
[[nodiscard]] DirectivityResult directivity(const CouplingMatrix& coupling,
                                            const ExcitationVector& j, const Direction& dir);
[[nodiscard]] DirectivityResult directivity(const ExcitationVector& j, const ArrayGeometry& geom,
                                            const Direction& dir);

/**
 * Directivity straight from its definition: 2 pi |J(dir)|^2 divided by the
 * half-space integral of |J|^2 sin(theta), with the integral evaluated by
 * Gauss-Legendre quadrature. Used as an oracle for directivity(); it never
 * touches the coupling matrix. Throws QuadratureNotConverged when doubling
 * the order changes the denominator by more than `rel_tol` relative.
 */
[[nodiscard]] double directivity_quadrature_oracle(const ExcitationVector& j,
                                                   const ArrayGeometry& geom,
                                                   const Direction& dir, int quad_order = 64,
                                                   double rel_tol = 1e-10);

/// Maximum-directivity weights j* = C^{-1} a and the achieved value
/// G* = a^H C^{-1} a.
[[nodiscard]] OptimalExcitation optimal_excitation(const CouplingMatrix& coupling,
                                                   const Direction& dir);
[[nodiscard]] OptimalExcitation optimal_excitation(const ArrayGeometry& geom,
                                                   const Direction& dir);

[[nodiscard]] DirectivityResult max_directivity(const CouplingMatrix& coupling,
                                                const Direction& dir);
[[nodiscard]] DirectivityResult max_directivity(const ArrayGeometry& geom, const Direction& dir);

struct EigenCrosscheck {
    double lambda0;
    ExcitationVector v0;
    /// Magnitude estimate of the second generalized eigenvalue after deflating
    /// the dominant pair.
    double second_eigenvalue;
    int iterations;
};

/**
 * Top generalized eigenpair of A v = lambda C v with A = a a^H, by power
 * iteration on L^{-1} A L^{-T}. A is applied as a (a^H x); nothing here uses
 * the closed form for the eigenvalue, so the result is an independent check
 * of max_directivity(). Throws PowerIterationStalled after max_iterations.
 */
[[nodiscard]] EigenCrosscheck eigen_crosscheck(const CouplingMatrix& coupling,
                                               const Direction& dir, double tol = 1e-12,
                                               int max_iterations = 10000);

/// (1 / 2 pi) times the half-space integral of G* sin(theta). Equals the
/// element count in exact arithmetic. Throws QuadratureNotConverged when
/// doubling the order changes the result by more than `rel_tol` relative.
[[nodiscard]] double average_max_directivity(const CouplingMatrix& coupling, int quad_order = 64,
                                             double rel_tol = 1e-6);

/// Rotates and scales w to the WeightNormalization convention.
[[nodiscard]] ExcitationVector normalize_weights(const ExcitationVector& w);

}  // namespace superdir
