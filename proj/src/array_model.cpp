#include "superdir/array_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "superdir/errors.hpp"

namespace superdir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

double clamp_angle(double value, const char* field) {
    if (!std::isfinite(value) || value < -kAngleSlack || value > kPi + kAngleSlack) {
        throw ConfigError(field, "angle " + std::to_string(value) + " rad outside [0, pi]");
    }
    if (value < 0.0) return 0.0;
    if (value > kPi) return kPi;
    return value;
}

void check_spacing(double value, const char* field) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ConfigError(field, "spacing must be > 0 wavelengths");
    }
    if (value > ArrayGeometry::kMaxSpacing) {
        throw ConfigError(field, "spacing above 10 wavelengths is not supported");
    }
}

}  // namespace

ArrayGeometry::ArrayGeometry(int rows, int cols, double dx, double dz)
    : rows_(rows), cols_(cols), dx_(dx), dz_(dz) {
    if (rows < 1) throw ConfigError("rows", "must be >= 1");
    if (cols < 1) throw ConfigError("cols", "must be >= 1");
    check_spacing(dx, "dx");
    check_spacing(dz, "dz");
}

Direction::Direction(double phi, double theta)
    : phi_(clamp_angle(phi, "phi")), theta_(clamp_angle(theta, "theta")) {}

Direction Direction::from_degrees(double phi_deg, double theta_deg) {
    // Exact endpoints so that 180 deg lands on pi rather than one ulp past it.
    auto to_rad = [](double deg) {
        if (deg == 180.0) return kPi;
        if (deg == 90.0) return kPi / 2.0;
        return deg * kPi / 180.0;
    };
    return Direction(to_rad(phi_deg), to_rad(theta_deg));
}

Eigen::Index flat_index(const ArrayGeometry& geom, ElementIndex idx) {
    return static_cast<Eigen::Index>(idx.m) * geom.cols() + idx.n;
}

ElementIndex element_index(const ArrayGeometry& geom, Eigen::Index flat) {
    const auto cols = static_cast<Eigen::Index>(geom.cols());
    return {static_cast<int>(flat / cols), static_cast<int>(flat % cols)};
}

SpatialFrequencies spatial_frequencies(const ArrayGeometry& geom, const Direction& dir) {
    return {geom.dx() * std::sin(dir.theta()) * std::cos(dir.phi()),
            geom.dz() * std::cos(dir.theta())};
}

Eigen::VectorXcd steering_vector(const ArrayGeometry& geom, const Direction& dir) {
    const auto [fx, fz] = spatial_frequencies(geom, dir);
    Eigen::VectorXcd a(geom.element_count());
    for (int m = 0; m < geom.rows(); ++m) {
        for (int n = 0; n < geom.cols(); ++n) {
            const double phase = 2.0 * kPi * (n * fx + m * fz);
            a(flat_index(geom, {m, n})) = std::polar(1.0, phase);
        }
    }
    return a;
}

void check_dimension(const ExcitationVector& j, const ArrayGeometry& geom) {
    if (j.size() != geom.element_count()) {
        throw DimensionMismatch("excitation has " + std::to_string(j.size()) +
                                " entries but the array has " +
                                std::to_string(geom.element_count()) + " elements");
    }
}

Complex array_output(const ExcitationVector& j, const ArrayGeometry& geom, const Direction& dir) {
    check_dimension(j, geom);
    return steering_vector(geom, dir).dot(j);
}

}  // namespace superdir
