#include "superdir/pattern.hpp"

#include <algorithm>
#include <numbers>

#include "superdir/directivity.hpp"
#include "superdir/errors.hpp"

namespace superdir {

namespace {

// Mirror-symmetric nodes agree only to round-off; a later node has to beat
// the current peak by more than this to take over.
constexpr double kPeakTieDb = 1e-9;

void check_count(int count, const char* field) {
    if (count < 2) throw ConfigError(field, "sample count must be >= 2");
}

}  // namespace

std::vector<double> uniform_angles(int count) {
    check_count(count, "count");
    std::vector<double> out(count);
    const double step_den = static_cast<double>(count - 1);
    for (int k = 0; k < count; ++k) {
        out[k] = std::numbers::pi * (static_cast<double>(k) / step_den);
    }
    out.front() = 0.0;
    out.back() = std::numbers::pi;
    return out;
}

PatternPeak PatternGrid::peak() const {
    PatternPeak best{values_db(0, 0), phi_samples[0], theta_samples[0]};
    for (Eigen::Index p = 0; p < values_db.rows(); ++p) {
        for (Eigen::Index t = 0; t < values_db.cols(); ++t) {
            if (values_db(p, t) > best.db + kPeakTieDb) {
                best = {values_db(p, t), phi_samples[p], theta_samples[t]};
            }
        }
    }
    return best;
}

PatternGrid pattern_grid(const ArrayGeometry& geom, int phi_count, int theta_count) {
    check_count(phi_count, "phi_count");
    check_count(theta_count, "theta_count");
    const CouplingMatrix coupling(geom);

    PatternGrid grid{geom, uniform_angles(phi_count), uniform_angles(theta_count),
                     Eigen::MatrixXd(phi_count, theta_count), PatternKind::max_directivity,
                     std::nullopt, coupling.condition_estimate(), coupling.jitter_applied()};
    for (int p = 0; p < phi_count; ++p) {
        for (int t = 0; t < theta_count; ++t) {
            const Direction dir(grid.phi_samples[p], grid.theta_samples[t]);
            grid.values_db(p, t) = max_directivity(coupling, dir).db;
        }
    }
    return grid;
}

PatternGrid fixed_excitation_grid(const ArrayGeometry& geom, const ExcitationVector& j,
                                  int phi_count, int theta_count) {
    check_count(phi_count, "phi_count");
    check_count(theta_count, "theta_count");
    check_dimension(j, geom);
    const CouplingMatrix coupling(geom);

    PatternGrid grid{geom, uniform_angles(phi_count), uniform_angles(theta_count),
                     Eigen::MatrixXd(phi_count, theta_count), PatternKind::fixed_excitation,
                     j, coupling.condition_estimate(), coupling.jitter_applied()};
    for (int p = 0; p < phi_count; ++p) {
        for (int t = 0; t < theta_count; ++t) {
            const Direction dir(grid.phi_samples[p], grid.theta_samples[t]);
            grid.values_db(p, t) = directivity(coupling, j, dir).db;
        }
    }
    return grid;
}

PatternPeak PlaneCut::peak() const {
    PatternPeak best{db.front(), phi, theta.front()};
    for (std::size_t k = 1; k < db.size(); ++k) {
        if (db[k] > best.db + kPeakTieDb) best = {db[k], phi, theta[k]};
    }
    return best;
}

PlaneCut plane_cut(const CouplingMatrix& coupling, double phi, int theta_count) {
    check_count(theta_count, "theta_count");
    PlaneCut cut{phi, uniform_angles(theta_count), {}};
    cut.db.reserve(cut.theta.size());
    for (const double theta : cut.theta) {
        cut.db.push_back(max_directivity(coupling, Direction(phi, theta)).db);
    }
    return cut;
}

PlaneCut plane_cut(const ArrayGeometry& geom, double phi, int theta_count) {
    return plane_cut(CouplingMatrix(geom), phi, theta_count);
}

PlaneCut endfire_plane_cut(const ArrayGeometry& geom, int theta_count) {
    return plane_cut(geom, 0.0, theta_count);
}

std::size_t SweepResult::success_count() const {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(), [](const SweepEntry& e) { return e.cut.has_value(); }));
}

SweepResult spacing_sweep(int rows, int cols, std::span<const double> spacings, int theta_count) {
    check_count(theta_count, "theta_count");
    if (spacings.empty()) throw ConfigError("spacings", "list must not be empty");
    // Validate every spacing up front so a typo is a config error, not a
    // per-spacing computation failure.
    for (const double s : spacings) (void)ArrayGeometry(rows, cols, s, s);

    SweepResult result{rows, cols, 0.0, uniform_angles(theta_count), {}};
    for (const double s : spacings) {
        SweepEntry entry{s, std::nullopt, {}};
        try {
            const CouplingMatrix coupling(ArrayGeometry(rows, cols, s, s));
            entry.condition_estimate = coupling.condition_estimate();
            entry.jitter_applied = coupling.jitter_applied();
            entry.cut = plane_cut(coupling, result.plane_phi, theta_count);
        } catch (const FactorizationFailure& e) {
            entry.condition_estimate = e.condition_estimate();
            entry.failure = e.what();
        } catch (const NumericalInconsistency& e) {
            entry.failure = e.what();
        }
        result.entries.push_back(std::move(entry));
    }
    return result;
}

}  // namespace superdir
