#include "kgspectral/stepper.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kgspectral/errors.hpp"

namespace kgspectral {

namespace {

void check_params(const SolverParams& params) {
    if (!(params.dt > 0.0) || !std::isfinite(params.dt))
        throw ContractError("SolverParams: dt must be positive and finite");
    if (!(params.theta >= 0.0 && params.theta <= 1.0))
        throw ContractError("SolverParams: theta must lie in [0, 1]");
    if (!(params.fp_tol > 0.0))
        throw ContractError("SolverParams: fp_tol must be positive");
    if (params.fp_max_iter < 1)
        throw ContractError("SolverParams: fp_max_iter must be at least 1");
}

void check_state(const SpectralState& state, const GridSpec& grid, const char* where) {
    if (state.u_coeffs.modes() != grid.modes() || state.v_coeffs.modes() != grid.modes())
        throw ContractError(std::string(where) + ": state resolution does not match grid");
}

bool has_forcing(const ProblemSpec& problem) {
    return problem.beta != 0.0 && problem.nonlinearity.kind() != Nonlinearity::Kind::Zero;
}

/// The theta-scheme stage combination. forcing_n / forcing_it are the
/// spectra of F(u) at t_n and at the current iterate; null means the
/// forcing term is absent.
SpectralState apply_update(const SpectralState& state_n, const RealCoeffs* forcing_n,
                           const SpectralState& iterate, const RealCoeffs* forcing_it,
                           const ProblemSpec& problem, const GridSpec& grid,
                           const SolverParams& params) {
    const int modes = grid.modes();
    const double w0 = (1.0 - params.theta) * params.dt;
    const double w1 = params.theta * params.dt;
    const double beta = problem.beta;

    SpectralState next;
    next.u_coeffs = RealCoeffs(modes);
    next.v_coeffs = RealCoeffs(modes);
    next.time = state_n.time + params.dt;

    const double f0_n = forcing_n ? forcing_n->zero_mode : 0.0;
    const double f0_it = forcing_it ? forcing_it->zero_mode : 0.0;
    next.u_coeffs.zero_mode =
        state_n.u_coeffs.zero_mode + w0 * state_n.v_coeffs.zero_mode + w1 * iterate.v_coeffs.zero_mode;
    next.v_coeffs.zero_mode = state_n.v_coeffs.zero_mode - beta * (w0 * f0_n + w1 * f0_it);

#pragma omp parallel for
    for (int l = 1; l <= modes; l++) {
        const std::size_t i = static_cast<std::size_t>(l - 1);
        const double k = grid.wavenumber(l);
        const double lambda = problem.alpha * k * k;

        const double fc_n = forcing_n ? forcing_n->cos_modes[i] : 0.0;
        const double fs_n = forcing_n ? forcing_n->sin_modes[i] : 0.0;
        const double fc_it = forcing_it ? forcing_it->cos_modes[i] : 0.0;
        const double fs_it = forcing_it ? forcing_it->sin_modes[i] : 0.0;

        next.u_coeffs.cos_modes[i] = state_n.u_coeffs.cos_modes[i] +
                                     w0 * state_n.v_coeffs.cos_modes[i] +
                                     w1 * iterate.v_coeffs.cos_modes[i];
        next.u_coeffs.sin_modes[i] = state_n.u_coeffs.sin_modes[i] +
                                     w0 * state_n.v_coeffs.sin_modes[i] +
                                     w1 * iterate.v_coeffs.sin_modes[i];
        next.v_coeffs.cos_modes[i] =
            state_n.v_coeffs.cos_modes[i] +
            w0 * (lambda * state_n.u_coeffs.cos_modes[i] - beta * fc_n) +
            w1 * (lambda * iterate.u_coeffs.cos_modes[i] - beta * fc_it);
        next.v_coeffs.sin_modes[i] =
            state_n.v_coeffs.sin_modes[i] +
            w0 * (lambda * state_n.u_coeffs.sin_modes[i] - beta * fs_n) +
            w1 * (lambda * iterate.u_coeffs.sin_modes[i] - beta * fs_it);
    }
    return next;
}

double pair_max_abs(const RealCoeffs& a, const RealCoeffs& b) {
    double m = std::abs(a.zero_mode - b.zero_mode);
    for (std::size_t i = 0; i < a.cos_modes.size(); i++) {
        m = std::max(m, std::abs(a.cos_modes[i] - b.cos_modes[i]));
        m = std::max(m, std::abs(a.sin_modes[i] - b.sin_modes[i]));
    }
    return m;
}

}  // namespace

double max_abs_difference(const SpectralState& a, const SpectralState& b) {
    if (a.u_coeffs.modes() != b.u_coeffs.modes() || a.v_coeffs.modes() != b.v_coeffs.modes())
        throw ContractError("max_abs_difference: states differ in resolution");
    return std::max(pair_max_abs(a.u_coeffs, b.u_coeffs), pair_max_abs(a.v_coeffs, b.v_coeffs));
}

SpectralState initial_state(const ProblemSpec& problem, const GridSpec& grid, TransformPath path) {
    if (!problem.initial_u || !problem.initial_v)
        throw ContractError("initial_state: problem lacks initial data");
    if (std::abs(grid.length() - problem.length) >
        1e-12 * std::max(1.0, std::abs(problem.length)))
        throw ContractError("initial_state: grid length does not match problem length");

    const int points = grid.points();
    GridField fu(points), fv(points);
    for (int j = 0; j < points; j++) {
        const double x = grid.point(j);
        fu.samples[static_cast<std::size_t>(j)] = problem.initial_u(x);
        fv.samples[static_cast<std::size_t>(j)] = problem.initial_v(x);
    }
    SpectralState state;
    state.u_coeffs = analyze(fu, grid, path);
    state.v_coeffs = analyze(fv, grid, path);
    state.time = 0.0;
    return state;
}

SpectralState fixed_point_sweep(const SpectralState& state_n, const SpectralState& iterate,
                                const ProblemSpec& problem, const GridSpec& grid,
                                const SolverParams& params) {
    check_params(params);
    check_state(state_n, grid, "fixed_point_sweep");
    check_state(iterate, grid, "fixed_point_sweep");
    if (!has_forcing(problem))
        return apply_update(state_n, nullptr, iterate, nullptr, problem, grid, params);
    const RealCoeffs forcing_n =
        nonlinear_spectrum(state_n.u_coeffs, grid, problem.nonlinearity, params.transform);
    const RealCoeffs forcing_it =
        nonlinear_spectrum(iterate.u_coeffs, grid, problem.nonlinearity, params.transform);
    return apply_update(state_n, &forcing_n, iterate, &forcing_it, problem, grid, params);
}

SpectralState step(const SpectralState& state, const ProblemSpec& problem, const GridSpec& grid,
                   const SolverParams& params, StepReport* report) {
    check_params(params);
    check_state(state, grid, "step");

    const bool forcing = has_forcing(problem);
    RealCoeffs forcing_n;
    if (forcing)
        forcing_n = nonlinear_spectrum(state.u_coeffs, grid, problem.nonlinearity, params.transform);

    // Picard iteration seeded with the state at t_n; for that seed the
    // iterate's forcing spectrum is the one already at hand.
    SpectralState iterate = state;
    const RealCoeffs* forcing_it = forcing ? &forcing_n : nullptr;
    RealCoeffs forcing_buf;
    double residual = std::numeric_limits<double>::infinity();

    for (int sweep = 1; sweep <= params.fp_max_iter; sweep++) {
        SpectralState next;
        try {
            next = apply_update(state, forcing ? &forcing_n : nullptr, iterate, forcing_it,
                                problem, grid, params);
            if (!next.u_coeffs.all_finite() || !next.v_coeffs.all_finite())
                throw ContractError("non-finite iterate");
            residual = max_abs_difference(next, iterate);
            iterate = next;

            const double scale =
                1.0 + std::max(iterate.u_coeffs.max_abs(), iterate.v_coeffs.max_abs());
            if (residual <= params.fp_tol * scale) {
                if (report) {
                    report->iterations = sweep;
                    report->final_residual = residual;
                    report->converged = true;
                }
                return iterate;
            }
            if (forcing) {
                forcing_buf = nonlinear_spectrum(iterate.u_coeffs, grid, problem.nonlinearity,
                                                 params.transform);
                forcing_it = &forcing_buf;
            }
        } catch (const ContractError&) {
            // Sizes are consistent by construction here, so the only
            // contract violation reachable is a non-finite value.
            throw StepFailure("fixed-point iteration diverged at t = " +
                                  std::to_string(state.time) + " (sweep " +
                                  std::to_string(sweep) + ")",
                              sweep, residual, true);
        }
    }
    throw StepFailure("fixed-point iteration did not converge within " +
                          std::to_string(params.fp_max_iter) + " sweeps at t = " +
                          std::to_string(state.time) + " (residual " +
                          std::to_string(residual) + ")",
                      params.fp_max_iter, residual, false);
}

SpectralState evolve(const SpectralState& state, const ProblemSpec& problem, const GridSpec& grid,
                     const SolverParams& params, double t_final,
                     const std::function<void(const SpectralState&, const StepReport&)>& observer) {
    check_params(params);
    check_state(state, grid, "evolve");
    if (!std::isfinite(t_final)) throw ContractError("evolve: t_final must be finite");

    const double t0 = state.time;
    const double span = t_final - t0;
    if (span < 0.0) throw ContractError("evolve: t_final precedes the state time");
    const long long nsteps = std::llround(span / params.dt);
    if (std::abs(nsteps * params.dt - span) >
        4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(span)))
        throw ContractError("evolve: t_final - t0 is not a whole number of steps of dt");

    SpectralState current = state;
    for (long long i = 0; i < nsteps; i++) {
        StepReport report;
        try {
            current = step(current, problem, grid, params, &report);
        } catch (StepFailure& failure) {
            failure.step_index = static_cast<std::size_t>(i);
            throw;
        }
        // Stamp the time from t0 to keep it free of accumulated rounding.
        current.time = t0 + static_cast<double>(i + 1) * params.dt;
        if (observer) observer(current, report);
    }
    return current;
}

}  // namespace kgspectral
