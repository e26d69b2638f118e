#pragma once

#include <stdexcept>
#include <string>

namespace superdir {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A geometry, direction or run parameter violates its invariants.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Vector length does not match the element count of the geometry.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Directivity is undefined for the all-zeros excitation.
class ZeroExcitation : public Error {
public:
    using Error::Error;
};

/// The coupling matrix stayed non-positive-definite after the maximum jitter.
class FactorizationFailure : public Error {
public:
    FactorizationFailure(const std::string& message, double condition_estimate)
        : Error(message), condition_estimate_(condition_estimate) {}

    [[nodiscard]] double condition_estimate() const { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// Doubling the quadrature order moved the result by more than the tolerance.
class QuadratureNotConverged : public Error {
public:
    QuadratureNotConverged(const std::string& message, double change)
        : Error(message), change_(change) {}

    [[nodiscard]] double change() const { return change_; }

private:
    double change_;
};

class PowerIterationStalled : public Error {
public:
    using Error::Error;
};

/// A quantity that is real in exact arithmetic came out with a non-negligible
/// imaginary part.
class NumericalInconsistency : public Error {
public:
    using Error::Error;
};

}  // namespace superdir
