#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgspectral {

/// Thrown when a call violates a documented size or argument contract.
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a quadrature is requested with too few collocation points
/// for the nonlinearity at hand (strict dealiasing checks only).
struct AliasingError : ContractError {
    using ContractError::ContractError;
};

/// Thrown by a diagnostic that is not defined for the given problem.
struct UnsupportedDiagnostic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when the fixed-point iteration of an implicit step fails, either
/// by exceeding the iteration cap or by producing non-finite coefficients.
/// `step_index` is filled in by the time loop when the failure occurs inside
/// a longer evolution.
struct StepFailure : std::runtime_error {
    static constexpr std::size_t kNoStep = static_cast<std::size_t>(-1);

    StepFailure(const std::string& what, int iterations_, double residual_, bool diverged_)
        : std::runtime_error(what),
          iterations(iterations_),
          residual(residual_),
          diverged(diverged_) {}

    int iterations = 0;
    double residual = 0.0;
    bool diverged = false;
    std::size_t step_index = kNoStep;
};

/// Thrown on malformed configuration files or command-line values.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace kgspectral
