#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "doctest.h"

#include "superdir/coupling.hpp"
#include "superdir/errors.hpp"

using namespace superdir;

namespace {

// sinc(sqrt 2) to 30 digits, from an independent multiprecision evaluation.
constexpr double kSincSqrt2 = -0.216954294377476369356864039063;

}  // namespace

TEST_CASE("sinc values") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-9) == doctest::Approx(1.0).epsilon(1e-16));
    for (int k : {1, 2, 3, -1, -7}) CHECK(std::abs(sinc(k)) < 1e-15);
    CHECK(sinc(0.5) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(sinc(std::sqrt(2.0)) == doctest::Approx(kSincSqrt2).epsilon(1e-14));
    CHECK(sinc(-0.3) == sinc(0.3));
}

TEST_CASE("sinc series branch matches the direct formula near the cutoff") {
    for (double x : {9.9e-7, 5e-7, 1e-7}) {
        const double direct = std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
        CHECK(std::abs(sinc(x) - direct) < 1e-15);
    }
}

TEST_CASE("coupling matrix examples") {
    const CouplingMatrix single(ArrayGeometry(1, 1, 0.5, 0.5));
    CHECK(single.entries().rows() == 1);
    CHECK(single.entries()(0, 0) == 1.0);

    const CouplingMatrix pair(ArrayGeometry(1, 2, 0.5, 0.5));
    CHECK(pair.entries()(0, 0) == 1.0);
    CHECK(std::abs(pair.entries()(0, 1)) < 1e-15);
    CHECK(pair.jitter_applied() == 0.0);

    const ArrayGeometry square(2, 2, 0.5, 0.5);
    const CouplingMatrix quad(square);
    const auto diag = flat_index(square, {1, 1});
    CHECK(quad.entries()(0, diag) == doctest::Approx(kSincSqrt2).epsilon(1e-14));
    // Horizontal and vertical neighbours at half a wavelength decouple.
    CHECK(std::abs(quad.entries()(0, 1)) < 1e-15);
    CHECK(std::abs(quad.entries()(0, 2)) < 1e-15);
}

TEST_CASE("coupling matrix structure") {
    for (double s : {0.1, 0.25, 0.45, 0.5, 0.7}) {
        const ArrayGeometry g(3, 4, s, 0.8 * s);
        const Eigen::MatrixXd c = coupling_entries(g);
        for (Eigen::Index i = 0; i < c.rows(); ++i) {
            CHECK(c(i, i) == 1.0);
            const ElementIndex ei = element_index(g, i);
            for (Eigen::Index j = 0; j < c.cols(); ++j) {
                CHECK(c(i, j) == c(j, i));
                if (i != j) {
                    CHECK(c(i, j) > -1.0);
                    CHECK(c(i, j) < 1.0);
                }
                // Block Toeplitz: value depends only on (|dm|, |dn|).
                const ElementIndex ej = element_index(g, j);
                const ElementIndex origin{std::abs(ei.m - ej.m), std::abs(ei.n - ej.n)};
                CHECK(c(i, j) == c(0, flat_index(g, origin)));
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    }
}

TEST_CASE("coupling tends to the rank-one all-ones matrix as spacing shrinks") {
    CHECK(coupling_entries(ArrayGeometry(3, 3, 0.01, 0.01)).minCoeff() > 0.99);
    // A 4x8 aperture spans 0.076 wavelengths at 0.01 spacing, so it needs a
    // tenth of that to clear the same bound.
    CHECK(coupling_entries(ArrayGeometry(4, 8, 0.01, 0.01)).minCoeff() < 0.99);
    CHECK(coupling_entries(ArrayGeometry(4, 8, 0.001, 0.001)).minCoeff() > 0.99);
}

TEST_CASE("factor reproduces the regularized matrix") {
    for (double s : {0.5, 0.3, 0.1}) {
        const CouplingMatrix c(ArrayGeometry(4, 8, s, s));
        const Eigen::MatrixXd& l = c.cholesky_factor();
        CHECK(l.isLowerTriangular());
        Eigen::MatrixXd expected = c.entries();
        expected.diagonal().array() += c.jitter_applied();
        CHECK((l * l.transpose() - expected).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(c.condition_estimate() >= 1.0);

        // Solve against a known right-hand side.
        Eigen::VectorXcd x(32);
        for (Eigen::Index k = 0; k < 32; ++k) x(k) = Complex(std::cos(0.3 * k), std::sin(1.1 * k));
        const Eigen::VectorXcd b = c.entries().cast<Complex>() * x;
        if (s >= 0.3) {
            CHECK((c.solve(b) - x).norm() < 1e-9 * x.norm() * c.condition_estimate() * 1e-3 + 1e-9);
        }
    }
}

TEST_CASE("well-spaced arrays need no jitter; very dense ones do") {
    CHECK(CouplingMatrix(ArrayGeometry(4, 8, 0.5, 0.5)).jitter_applied() == 0.0);
    CHECK(CouplingMatrix(ArrayGeometry(4, 8, 0.3, 0.3)).jitter_applied() == 0.0);

    const CouplingMatrix dense(ArrayGeometry(4, 8, 0.01, 0.01));
    const double jitter = dense.jitter_applied();
    CHECK(jitter > 0.0);
    CHECK(jitter <= 1e-8 * 32 * (1 + 1e-9));
    // Jitter follows the 1e-14 * MN * 100^k schedule.
    const double steps = std::log(jitter / (1e-14 * 32)) / std::log(100.0);
    CHECK(std::abs(steps - std::round(steps)) < 1e-6);
    CHECK(dense.condition_estimate() > 1e6);
}

TEST_CASE("factorization failure carries the condition estimate") {
    const FactorizationFailure err("not positive definite", 3.5e17);
    CHECK(err.condition_estimate() == 3.5e17);
    CHECK(std::string(err.what()) == "not positive definite");
}

TEST_CASE("coupling oracle examples") {
    const ArrayGeometry pair(1, 2, 0.5, 0.5);
    CHECK(coupling_entry_oracle(pair, {0, 0}, {0, 0}, 64) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(coupling_entry_oracle(pair, {0, 0}, {0, 1}, 64)) < 1e-9);

    const ArrayGeometry square(2, 2, 0.5, 0.5);
    CHECK(std::abs(coupling_entry_oracle(square, {0, 0}, {1, 1}, 64) - kSincSqrt2) < 1e-7);

    CHECK_THROWS_AS((void)coupling_entry_oracle(pair, {0, 0}, {0, 1}, 4), ConfigError);
}

TEST_CASE("coupling oracle reports non-convergence at too low an order") {
    // A 7-wavelength baseline oscillates far faster than an 8-point rule resolves.
    const ArrayGeometry wide(1, 8, 1.0, 1.0);
    CHECK_THROWS_AS((void)coupling_entry_oracle(wide, {0, 0}, {0, 7}, 8), QuadratureNotConverged);
}

TEST_CASE("closed-form coupling agrees with the quadrature oracle") {
    const int shapes[][2] = {{1, 2}, {2, 2}, {1, 8}, {2, 4}, {4, 4}, {3, 5}};
    for (const auto& shape : shapes) {
        for (double s : {0.1, 0.25, 0.45, 0.5, 0.7}) {
            const ArrayGeometry g(shape[0], shape[1], s, s);
            const Eigen::MatrixXd c = coupling_entries(g);
            double worst = 0.0;
            for (Eigen::Index i = 0; i < c.rows(); ++i) {
                for (Eigen::Index j = i; j < c.cols(); ++j) {
                    const double oracle = coupling_entry_oracle(g, element_index(g, i),
                                                                element_index(g, j), 64);
                    worst = std::max(worst, std::abs(oracle - c(i, j)));
                }
            }
            CAPTURE(s);
            CHECK(worst < 1e-6);
        }
    }
}
