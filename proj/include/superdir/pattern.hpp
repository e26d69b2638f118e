#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "superdir/array_model.hpp"
#include "superdir/coupling.hpp"

namespace superdir {

/// `count` uniformly spaced angles over [0, pi], both endpoints included.
[[nodiscard]] std::vector<double> uniform_angles(int count);

enum class PatternKind { max_directivity, fixed_excitation };

struct PatternPeak {
    double db;
    double phi;
    double theta;
};

struct PatternGrid {
    ArrayGeometry geom;
    std::vector<double> phi_samples;
    std::vector<double> theta_samples;
    Eigen::MatrixXd values_db;  // rows follow phi_samples, columns theta_samples
    PatternKind kind = PatternKind::max_directivity;
    std::optional<ExcitationVector> excitation;
    double condition_estimate = 1.0;
    double jitter_applied = 0.0;

    /// First maximum in phi-major order; values within 1e-9 dB count as ties.
    [[nodiscard]] PatternPeak peak() const;
};

/// G* in dB over a uniform phi x theta grid. Throws FactorizationFailure
/// before evaluating any node if C cannot be factored.
[[nodiscard]] PatternGrid pattern_grid(const ArrayGeometry& geom, int phi_count, int theta_count);

/// Directivity of a fixed excitation over the same kind of grid.
[[nodiscard]] PatternGrid fixed_excitation_grid(const ArrayGeometry& geom,
                                                const ExcitationVector& j, int phi_count,
                                                int theta_count);

struct PlaneCut {
    double phi;
    std::vector<double> theta;
    std::vector<double> db;

    /// First maximum in theta order, same tie rule as PatternGrid::peak().
    [[nodiscard]] PatternPeak peak() const;
};

[[nodiscard]] PlaneCut plane_cut(const CouplingMatrix& coupling, double phi, int theta_count);
[[nodiscard]] PlaneCut plane_cut(const ArrayGeometry& geom, double phi, int theta_count);

/// Cut through the plane containing the array, phi = 0.
[[nodiscard]] PlaneCut endfire_plane_cut(const ArrayGeometry& geom, int theta_count);

struct SweepEntry {
    double spacing;
    std::optional<PlaneCut> cut;  // empty when this spacing failed
    std::string failure;
    double condition_estimate = 0.0;
    double jitter_applied = 0.0;
};

struct SweepResult {
    int rows;
    int cols;
    double plane_phi = 0.0;
    std::vector<double> theta;  // shared by every successful cut
    std::vector<SweepEntry> entries;

    [[nodiscard]] std::size_t success_count() const;
};

/// Endfire-plane cut for each spacing (dx = dz = spacing). A spacing whose
/// coupling matrix cannot be factored is recorded as failed and the sweep
/// carries on with the rest.
[[nodiscard]] SweepResult spacing_sweep(int rows, int cols, std::span<const double> spacings,
                                        int theta_count);

}  // namespace superdir
