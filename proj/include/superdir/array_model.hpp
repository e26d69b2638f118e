#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace superdir {

using Complex = std::complex<double>;

/// Complex element currents, flattened with the x index fastest (m * N + n).
using ExcitationVector = Eigen::VectorXcd;

/**
 * Uniform rectangular array in the xz plane.
 *
 * rows() elements along z, cols() elements along x. Spacings are stored in
 * wavelengths, so the carrier wavelength never appears on its own.
 */
class ArrayGeometry {
public:
    static constexpr double kMaxSpacing = 10.0;

    /// Throws ConfigError when a count is < 1 or a spacing is outside (0, 10].
    ArrayGeometry(int rows, int cols, double dx, double dz);

    [[nodiscard]] int rows() const { return rows_; }
    [[nodiscard]] int cols() const { return cols_; }
    [[nodiscard]] double dx() const { return dx_; }
    [[nodiscard]] double dz() const { return dz_; }
    [[nodiscard]] Eigen::Index element_count() const {
        return static_cast<Eigen::Index>(rows_) * cols_;
    }

    bool operator==(const ArrayGeometry&) const = default;

private:
    int rows_;
    int cols_;
    double dx_;
    double dz_;
};

/// Azimuth phi and zenith theta, both in [0, pi] radians.
class Direction {
public:
    /// Values within a few ulps outside [0, pi] are clamped; anything further
    /// out throws ConfigError.
    Direction(double phi, double theta);

    static Direction from_degrees(double phi_deg, double theta_deg);

    [[nodiscard]] double phi() const { return phi_; }
    [[nodiscard]] double theta() const { return theta_; }

    bool operator==(const Direction&) const = default;

private:
    double phi_;
    double theta_;
};

struct ElementIndex {
    int m = 0;  // z index
    int n = 0;  // x index

    bool operator==(const ElementIndex&) const = default;
};

[[nodiscard]] Eigen::Index flat_index(const ArrayGeometry& geom, ElementIndex idx);
[[nodiscard]] ElementIndex element_index(const ArrayGeometry& geom, Eigen::Index flat);

struct SpatialFrequencies {
    double fx;
    double fz;
};

/// fx = dx sin(theta) cos(phi), fz = dz cos(theta).
[[nodiscard]] SpatialFrequencies spatial_frequencies(const ArrayGeometry& geom,
                                                     const Direction& dir);

/// Entry m * N + n is exp(+j 2 pi (n fx + m fz)).
[[nodiscard]] Eigen::VectorXcd steering_vector(const ArrayGeometry& geom, const Direction& dir);

/// J = a^H j, the far-field output of the array towards dir.
[[nodiscard]] Complex array_output(const ExcitationVector& j, const ArrayGeometry& geom,
                                   const Direction& dir);

/// Throws DimensionMismatch unless j has one entry per element.
void check_dimension(const ExcitationVector& j, const ArrayGeometry& geom);

}  // namespace superdir
