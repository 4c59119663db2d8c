#pragma once

#include <functional>

#include "kgspectral/grid.hpp"
#include "kgspectral/problems.hpp"
#include "kgspectral/spectral.hpp"

namespace kgspectral {

/// Semi-discrete solution at one time level: Fourier coefficients of u and
/// of v = u_t.
struct SpectralState {
    RealCoeffs u_coeffs;
    RealCoeffs v_coeffs;
    double time = 0.0;
};

/// Time stepping controls. theta = 1/2 is the trapezoidal scheme (second
/// order); theta = 1 is backward Euler. The implicit stage is resolved by
/// fixed-point sweeps, stopping when the max-abs change falls below
/// fp_tol * (1 + max-abs of the iterate).
struct SolverParams {
    double theta = 0.5;
    double dt = 0.0;
    double fp_tol = 1e-14;
    int fp_max_iter = 100;
    TransformPath transform = TransformPath::Fft;
};

/// Outcome of one implicit step.
struct StepReport {
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
};

/// Largest coefficient-wise difference between two states at matching
/// resolution (u and v both).
double max_abs_difference(const SpectralState& a, const SpectralState& b);

/// Project the problem's initial data onto the grid: sample u(x,0) and
/// v(x,0) at the collocation points and analyze both.
SpectralState initial_state(const ProblemSpec& problem, const GridSpec& grid,
                            TransformPath path = TransformPath::Fft);

/// One Picard sweep of the theta-scheme update: given the accepted state at
/// t_n and the current iterate of the state at t_{n+1}, produce the next
/// iterate. step() drives this map to its fixed point; it is exposed so the
/// contraction behaviour can be probed directly.
SpectralState fixed_point_sweep(const SpectralState& state_n, const SpectralState& iterate,
                                const ProblemSpec& problem, const GridSpec& grid,
                                const SolverParams& params);

/// Advance one step of size params.dt. The initial iterate is the state at
/// t_n. Throws StepFailure if the sweeps hit fp_max_iter without meeting
/// the tolerance, or produce non-finite values (diverged).
SpectralState step(const SpectralState& state, const ProblemSpec& problem, const GridSpec& grid,
                   const SolverParams& params, StepReport* report = nullptr);

/// Step repeatedly from state.time to t_final, which must be a whole number
/// of steps away. The observer, when given, sees every accepted state. A
/// StepFailure thrown mid-run is annotated with the failing step index.
SpectralState evolve(const SpectralState& state, const ProblemSpec& problem, const GridSpec& grid,
                     const SolverParams& params, double t_final,
                     const std::function<void(const SpectralState&, const StepReport&)>& observer = {});

}  // namespace kgspectral
