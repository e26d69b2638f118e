#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "superdir/directivity.hpp"
#include "superdir/errors.hpp"
#include "superdir/pattern.hpp"

using namespace superdir;

namespace {

constexpr double kPi = std::numbers::pi;

double cut_max(const PlaneCut& cut) { return cut.peak().db; }

}  // namespace

TEST_CASE("uniform angle grid") {
    const auto a = uniform_angles(181);
    CHECK(a.size() == 181);
    CHECK(a.front() == 0.0);
    CHECK(a.back() == kPi);
    CHECK(a[90] == kPi / 2);
    CHECK(a[45] == doctest::Approx(kPi / 4).epsilon(1e-16));
    CHECK_THROWS_AS((void)uniform_angles(1), ConfigError);
}

TEST_CASE("half-wavelength 4x8 pattern") {
    const ArrayGeometry g(4, 8, 0.5, 0.5);
    const PatternGrid grid = pattern_grid(g, 181, 181);
    CHECK(grid.values_db.rows() == 181);
    CHECK(grid.values_db.cols() == 181);
    CHECK(grid.kind == PatternKind::max_directivity);
    CHECK(grid.values_db.allFinite());

    const double broadside = grid.values_db(90, 90);
    CHECK(std::abs(broadside - 16.68) <= 0.05);
    CHECK(std::abs(grid.values_db(0, 45) - 16.65) <= 0.05);
    CHECK(std::abs(grid.values_db(0, 45) - grid.values_db(0, 135)) < 1e-9);

    // The global maximum sits on the endfire plane, not at broadside.
    const PatternPeak peak = grid.peak();
    CHECK(peak.db >= broadside);
    CHECK(peak.phi == 0.0);
    CHECK(peak.theta == doctest::Approx(54.0 * kPi / 180.0).epsilon(1e-15));
    CHECK(peak.db == doctest::Approx(17.3568643111224).epsilon(1e-11));

    CHECK(grid.values_db.minCoeff() >= 0.0);
    CHECK(peak.db >= 10.0 * std::log10(32.0));

    // Mirror symmetry in x and z.
    double worst = 0.0;
    for (int p = 0; p < 181; ++p) {
        for (int t = 0; t < 181; ++t) {
            worst = std::max(worst, std::abs(grid.values_db(p, t) - grid.values_db(p, 180 - t)));
            worst = std::max(worst, std::abs(grid.values_db(p, t) - grid.values_db(180 - p, t)));
        }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("grid nodes equal fresh point evaluations") {
    const ArrayGeometry g(3, 4, 0.45, 0.4);
    const PatternGrid grid = pattern_grid(g, 19, 13);
    for (int p = 0; p < 19; p += 3) {
        for (int t = 0; t < 13; t += 2) {
            const Direction dir(grid.phi_samples[p], grid.theta_samples[t]);
            CHECK(grid.values_db(p, t) == max_directivity(g, dir).db);
        }
    }
}

TEST_CASE("single element pattern is flat at 0 dB") {
    const PatternGrid grid = pattern_grid(ArrayGeometry(1, 1, 0.5, 0.5), 37, 37);
    CHECK(grid.values_db.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fixed excitation grid never exceeds the maximum-directivity grid") {
    const ArrayGeometry g(2, 4, 0.4, 0.4);
    const ExcitationVector j = ExcitationVector::Ones(8);
    const PatternGrid fixed = fixed_excitation_grid(g, j, 31, 31);
    const PatternGrid best = pattern_grid(g, 31, 31);
    CHECK(fixed.kind == PatternKind::fixed_excitation);
    REQUIRE(fixed.excitation.has_value());
    CHECK((fixed.values_db.array() <= best.values_db.array() + 1e-9).all());
    CHECK_THROWS_AS((void)fixed_excitation_grid(g, ExcitationVector::Ones(3), 31, 31),
                    DimensionMismatch);
}

TEST_CASE("endfire-plane cuts") {
    const PlaneCut half = endfire_plane_cut(ArrayGeometry(4, 8, 0.5, 0.5), 181);
    const PlaneCut dense = endfire_plane_cut(ArrayGeometry(4, 8, 0.45, 0.45), 181);
    CHECK(half.phi == 0.0);
    CHECK(half.theta.size() == 181);
    CHECK(cut_max(dense) > cut_max(half));

    const double dense_broadside =
        max_directivity(ArrayGeometry(4, 8, 0.45, 0.45), Direction(kPi / 2, kPi / 2)).db;
    CHECK(dense_broadside < 16.68);

    for (const PlaneCut* cut : {&half, &dense}) {
        for (std::size_t t = 0; t < cut->db.size(); ++t) {
            CHECK(std::abs(cut->db[t] - cut->db[cut->db.size() - 1 - t]) < 1e-9);
        }
    }
    CHECK(cut_max(half) == doctest::Approx(17.3568643111224).epsilon(1e-11));
    CHECK(cut_max(dense) == doctest::Approx(17.943404176251267).epsilon(1e-11));
}

TEST_CASE("spacing sweep reproduces the diminishing-returns trend") {
    const std::vector<double> spacings{0.5, 0.3, 0.1};
    const SweepResult sweep = spacing_sweep(4, 8, spacings, 181);
    REQUIRE(sweep.entries.size() == 3);
    REQUIRE(sweep.success_count() == 3);
    for (const auto& e : sweep.entries) CHECK(e.cut->theta == sweep.theta);

    const PlaneCut& c05 = *sweep.entries[0].cut;
    const PlaneCut& c03 = *sweep.entries[1].cut;
    const PlaneCut& c01 = *sweep.entries[2].cut;
    for (std::size_t t = 0; t < c05.db.size(); ++t) CHECK(c03.db[t] >= c05.db[t] - 0.1);

    const double gain_first = cut_max(c03) - cut_max(c05);
    const double gain_second = cut_max(c01) - cut_max(c03);
    CHECK(gain_first > 1.0);
    CHECK(gain_second < gain_first);
    CHECK(gain_second > 0.0);

    // Peaks frozen from a 50-digit reference evaluation on the same grid.
    CHECK(cut_max(c03) == doctest::Approx(19.10989140965593).epsilon(1e-10));
    CHECK(std::abs(cut_max(c01) - 19.750437309301702) < 1e-3);
}

TEST_CASE("sweep of a half-wavelength ULA is the flat classical gain") {
    const std::vector<double> spacings{0.5};
    const SweepResult sweep = spacing_sweep(1, 8, spacings, 91);
    REQUIRE(sweep.success_count() == 1);
    for (double v : sweep.entries[0].cut->db) CHECK(v == doctest::Approx(10.0 * std::log10(8.0)));
}

TEST_CASE("sweep rejects invalid spacing lists up front") {
    const std::vector<double> bad{0.5, 0.0};
    CHECK_THROWS_AS((void)spacing_sweep(4, 8, bad, 11), ConfigError);
    CHECK_THROWS_AS((void)spacing_sweep(4, 8, std::vector<double>{}, 11), ConfigError);
}

TEST_CASE("sweep keeps going past dense spacings that need jitter") {
    const std::vector<double> spacings{0.01, 0.5};
    const SweepResult sweep = spacing_sweep(4, 8, spacings, 31);
    REQUIRE(sweep.entries.size() == 2);
    CHECK(sweep.entries[0].jitter_applied > 0.0);
    CHECK(sweep.entries[1].cut.has_value());
    CHECK(sweep.entries[1].jitter_applied == 0.0);
}
