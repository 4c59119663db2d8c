#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kgspectral/grid.hpp"
#include "kgspectral/problems.hpp"
#include "kgspectral/stepper.hpp"

namespace kgspectral {

/// Pointwise deviations of one field from a reference at a fixed time,
/// together with their maximum over the grid.
struct ErrorReport {
    std::vector<double> per_point;
    double max_error = 0.0;
    std::string field_label;
    double time = 0.0;
};

/// Mixed absolute/relative deviation:
///
///   min(|exact - numeric|, |exact - numeric| / |exact|),
///
/// falling back to the absolute branch when exact = 0. Symmetric in the
/// sign of the deviation and never above the absolute error.
double pointwise_error(double exact, double numeric);

/// Evaluate pointwise_error(exact_fn(x_j, t), numeric_j) over the grid and
/// record the maximum.
ErrorReport field_error(const GridField& numeric,
                        const std::function<double(double, double)>& exact_fn,
                        const GridSpec& grid, double time, std::string field_label = {});

/// Discrete energy
///
///   E = (L/J) sum_j [ v_j^2 / 2 - alpha (u_x)_j^2 / 2 + beta G(u_j) ]
///
/// with u_x evaluated spectrally and G the antiderivative of the forcing.
/// For theta = 1/2 this drifts as O(dt^2); it is a diagnostic, not a
/// correctness gate. Throws UnsupportedDiagnostic if the forcing carries no
/// potential.
double energy(const SpectralState& state, const GridSpec& grid, const ProblemSpec& problem,
              TransformPath path = TransformPath::Fft);

/// Order of accuracy inferred from one adjacent (dt, dt/2) pair of a
/// convergence table. Pairs touching a zero error carry valid = false.
struct OrderEstimate {
    double dt_coarse = 0.0;
    double dt_fine = 0.0;
    double order = 0.0;
    bool valid = false;
};

/// Per-pair orders p_i = log2(E_i / E_{i+1}) for a table of (dt, Error)
/// rows whose dt values decrease geometrically with ratio 1/2.
std::vector<OrderEstimate> observed_order(const std::vector<std::pair<double, double>>& errors);

/// Least-squares slope of log E against log dt over the whole table,
/// ignoring zero-error rows. Smooths per-pair noise at the rounding floor.
double fitted_order(const std::vector<std::pair<double, double>>& errors);

}  // namespace kgspectral
