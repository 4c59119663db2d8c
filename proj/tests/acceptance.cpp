/// End-to-end acceptance checks. Each check prints one verdict line;
/// checks 1-8 are hard requirements and decide the exit status, check 9
/// (wall-clock scaling) is informative because timing noise is
/// machine-dependent. Tolerances are pinned here, not configurable.

#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <exception>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kgspectral/csvio.hpp"
#include "kgspectral/diagnostics.hpp"
#include "kgspectral/elliptic.hpp"
#include "kgspectral/errors.hpp"
#include "kgspectral/problems.hpp"
#include "kgspectral/runner.hpp"
#include "kgspectral/spectral.hpp"
#include "kgspectral/stepper.hpp"

using namespace kgspectral;

namespace {

int hard_failures = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) { return format_double(v); }

void verdict(int index, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << index << ". " << detail << "\n";
    if (!pass) hard_failures++;
}

void soft_verdict(int index, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[REPORT] ") << index << ". " << detail << "\n";
}

Outcome check_elliptic_constant() {
    const double reference = 6.743001419250385098;  // 4 K(1/2)
    const double computed = 4.0 * complete_elliptic_k(0.5);
    const double rel = std::abs(computed - reference) / reference;
    return {rel <= 1e-15, "elliptic constant: 4K(1/2) = " + fmt(computed) + ", rel dev = " +
                              fmt(rel) + " (want <= 1e-15)"};
}

/// Least-squares convergence order over dt = 2^-4 .. 2^-12 at N = 32, T = 1.
Outcome order_check(const std::string& problem) {
    SweepConfig config;
    config.base.problem = problem;
    config.dt_exponents = {4, 12};
    config.n_exponents = {5, 5};
    const std::vector<SweepRow> rows = run_sweep(config);

    bool all_converged = true;
    std::vector<std::pair<double, double>> table_u, table_v;
    for (const SweepRow& row : rows) {
        all_converged = all_converged && row.converged;
        table_u.emplace_back(row.dt, row.error_u);
        table_v.emplace_back(row.dt, row.error_v);
    }
    const double p_u = fitted_order(table_u);
    const double p_v = fitted_order(table_v);
    const bool pass = all_converged && p_u >= 1.8 && p_u <= 2.2 && p_v >= 1.8 && p_v <= 2.2;
    return {pass, problem + " order over dt = 2^-4..2^-12: p_u = " + fmt(p_u) + ", p_v = " +
                      fmt(p_v) + (all_converged ? "" : ", with non-converged cells") +
                      " (want [1.8, 2.2])"};
}

Outcome check_linear_order() { return order_check("linear-kg"); }

Outcome check_sine_gordon_order() { return order_check("sine-gordon"); }

Outcome check_precision_floor() {
    RunConfig config;
    config.dt = std::ldexp(1.0, -15);
    const ErrorSummaryRow last = simulate(config).error_summary.back();
    const bool pass = last.error_u <= 1e-8 && last.error_v <= 1e-8;
    return {pass, "linear-kg floor at dt = 2^-15: error_u = " + fmt(last.error_u) +
                      ", error_v = " + fmt(last.error_v) + " (want <= 1e-8)"};
}

Outcome check_resolution_independence() {
    RunConfig config;
    config.dt = std::ldexp(1.0, -8);
    config.modes = 32;
    const ErrorSummaryRow coarse = simulate(config).error_summary.back();
    try {
        config.modes = 1024;
        const ErrorSummaryRow fine = simulate(config).error_summary.back();
        const double ratio_u = coarse.error_u / fine.error_u;
        const double ratio_v = coarse.error_v / fine.error_v;
        const bool pass = ratio_u >= 0.5 && ratio_u <= 2.0 && ratio_v >= 0.5 && ratio_v <= 2.0;
        return {pass, "linear-kg error ratio N=32 over N=1024 at dt = 2^-8: u = " + fmt(ratio_u) +
                          ", v = " + fmt(ratio_v) + " (want [0.5, 2])"};
    } catch (const StepFailure& failure) {
        // At N = 1024, dt = 2^-8 the top modes have theta*dt*omega = pi/2
        // > 1, so the fixed-point map amplifies them and rounding noise
        // ratchets past any tolerance within a few steps. The resolution
        // independence itself holds one halving down, where the iteration
        // contracts; report that ratio alongside the failure.
        std::string note;
        try {
            RunConfig inside = config;  // N = 1024
            inside.dt = std::ldexp(1.0, -9);
            const ErrorSummaryRow fine = simulate(inside).error_summary.back();
            inside.modes = 32;
            const ErrorSummaryRow small = simulate(inside).error_summary.back();
            note = "; at dt = 2^-9 the iteration contracts and the ratio is u = " +
                   fmt(small.error_u / fine.error_u) + ", v = " +
                   fmt(small.error_v / fine.error_v);
        } catch (const std::exception&) {
        }
        return {false, std::string("linear-kg N=1024 at dt = 2^-8: fixed-point iteration "
                                   "divergent for the top modes (theta*dt*omega_max = pi/2 > "
                                   "1): ") +
                           failure.what() + note};
    }
}

Outcome check_spatial_saturation() {
    SweepConfig config;
    config.base.problem = "sine-gordon";
    config.dt_exponents = {13, 13};
    config.n_exponents = {2, 7};
    const std::vector<SweepRow> rows = run_sweep(config);  // N = 4, 8, ..., 128

    bool all_converged = true;
    for (const SweepRow& row : rows) all_converged = all_converged && row.converged;

    const bool decreasing = rows[0].error_u > rows[1].error_u &&
                            rows[1].error_u > rows[2].error_u &&
                            rows[0].error_v > rows[1].error_v &&
                            rows[1].error_v > rows[2].error_v;

    double lo_u = rows[3].error_u, hi_u = lo_u;
    double lo_v = rows[3].error_v, hi_v = lo_v;
    for (std::size_t i = 4; i < rows.size(); i++) {
        lo_u = std::min(lo_u, rows[i].error_u);
        hi_u = std::max(hi_u, rows[i].error_u);
        lo_v = std::min(lo_v, rows[i].error_v);
        hi_v = std::max(hi_v, rows[i].error_v);
    }
    const double spread_u = hi_u / lo_u;
    const double spread_v = hi_v / lo_v;

    const bool pass = all_converged && decreasing && spread_u < 2.0 && spread_v < 2.0;
    return {pass, "sine-gordon at dt = 2^-13: error_u N=4/8/16 = " + fmt(rows[0].error_u) + "/" +
                      fmt(rows[1].error_u) + "/" + fmt(rows[2].error_u) +
                      (decreasing ? " decreasing" : " NOT decreasing") +
                      ", N=32..128 spread u = " + fmt(spread_u) + ", v = " + fmt(spread_v) +
                      " (want < 2)"};
}

Outcome check_dealiasing() {
    const int n = 8;
    std::mt19937 rng(421885);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    RealCoeffs coeffs(n);
    coeffs.zero_mode = dist(rng);
    for (int l = 0; l < n; l++) {
        coeffs.cos_modes[static_cast<std::size_t>(l)] = dist(rng);
        coeffs.sin_modes[static_cast<std::size_t>(l)] = dist(rng);
    }

    // J = 33 is exactly the product rule for a cubic image of 8 modes.
    const GridSpec grid(8.0, n, 33);
    const Nonlinearity cubic = Nonlinearity::polynomial({0.0, 0.0, 0.0, 1.0});
    const RealCoeffs via_fft = nonlinear_spectrum(coeffs, grid, cubic, TransformPath::Fft, true);
    const RealCoeffs via_direct =
        nonlinear_spectrum(coeffs, grid, cubic, TransformPath::DirectSum, true);

    // Dense trapezoidal projection of u^3; exact for trig polynomials and
    // accumulated in extended precision to stay near 1e-15.
    const int quad = 1000000;
    long double mean = 0.0L;
    std::array<long double, n> proj_cos{}, proj_sin{};
    for (int j = 0; j < quad; j++) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / quad;
        std::array<double, n> cl, sl;
        double u = coeffs.zero_mode;
        for (int l = 1; l <= n; l++) {
            cl[static_cast<std::size_t>(l - 1)] = std::cos(l * theta);
            sl[static_cast<std::size_t>(l - 1)] = std::sin(l * theta);
            u += coeffs.cos_modes[static_cast<std::size_t>(l - 1)] *
                     cl[static_cast<std::size_t>(l - 1)] +
                 coeffs.sin_modes[static_cast<std::size_t>(l - 1)] *
                     sl[static_cast<std::size_t>(l - 1)];
        }
        const double w = u * u * u;
        mean += w;
        for (int l = 0; l < n; l++) {
            proj_cos[static_cast<std::size_t>(l)] += w * cl[static_cast<std::size_t>(l)];
            proj_sin[static_cast<std::size_t>(l)] += w * sl[static_cast<std::size_t>(l)];
        }
    }

    double dev = 0.0;
    for (const RealCoeffs* computed : {&via_fft, &via_direct}) {
        dev = std::max(dev, std::abs(computed->zero_mode - static_cast<double>(mean / quad)));
        for (int l = 0; l < n; l++) {
            const std::size_t i = static_cast<std::size_t>(l);
            dev = std::max(dev, std::abs(computed->cos_modes[i] -
                                         static_cast<double>(2.0L * proj_cos[i] / quad)));
            dev = std::max(dev, std::abs(computed->sin_modes[i] -
                                         static_cast<double>(2.0L * proj_sin[i] / quad)));
        }
    }
    return {dev <= 1e-12, "cubic spectrum at the J = 33 product rule vs 10^6-point quadrature: "
                          "max dev = " +
                              fmt(dev) + " (want <= 1e-12)"};
}

Outcome check_properties() {
    // Transform round trip on random coefficients, both kernels.
    std::mt19937 rng(911);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const GridSpec grid(7.3, 16, 64);
    RealCoeffs coeffs(16);
    coeffs.zero_mode = dist(rng);
    for (int l = 0; l < 16; l++) {
        coeffs.cos_modes[static_cast<std::size_t>(l)] = dist(rng);
        coeffs.sin_modes[static_cast<std::size_t>(l)] = dist(rng);
    }
    double round_trip = 0.0;
    for (TransformPath path : {TransformPath::Fft, TransformPath::DirectSum}) {
        const RealCoeffs back = analyze(synthesize(coeffs, grid, path), grid, path);
        round_trip = std::max(round_trip, std::abs(back.zero_mode - coeffs.zero_mode));
        for (int l = 0; l < 16; l++) {
            const std::size_t i = static_cast<std::size_t>(l);
            round_trip = std::max(round_trip, std::abs(back.cos_modes[i] - coeffs.cos_modes[i]));
            round_trip = std::max(round_trip, std::abs(back.sin_modes[i] - coeffs.sin_modes[i]));
        }
    }

    // Jacobi function identities across moduli and arguments.
    double identities = 0.0;
    for (double k : {0.0, 0.25, 0.5, 0.75, 0.9, 0.99}) {
        for (double x = -10.0; x <= 10.0; x += 0.37) {
            const JacobiTriple t = jacobi_sn_cn_dn(x, k);
            identities = std::max(identities, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0));
            identities =
                std::max(identities, std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0));
        }
    }

    // The traveling-wave solution satisfies u_tt = u_xx - sin u; verify by
    // second-order central differences.
    const double h = 1e-3;
    double residual = 0.0;
    const std::pair<double, double> probes[] = {
        {0.3, 0.2}, {1.7, 0.9}, {-2.4, 1.6}, {5.1, 3.3}, {0.0, 0.5}};
    for (const auto& [x, t] : probes) {
        const double u0 = sine_gordon_exact(x, t).u;
        const double utt =
            (sine_gordon_exact(x, t + h).u - 2.0 * u0 + sine_gordon_exact(x, t - h).u) / (h * h);
        const double uxx =
            (sine_gordon_exact(x + h, t).u - 2.0 * u0 + sine_gordon_exact(x - h, t).u) / (h * h);
        residual = std::max(residual, std::abs(utt - uxx + std::sin(u0)));
    }

    // With the forcing switched off the theta = 1/2 step conserves the
    // quadratic energy; track the worst excursion over 1000 steps.
    const ProblemSpec free_wave = make_custom_polynomial({}, -1.0, 0.0, 8.0);
    const GridSpec wave_grid(8.0, 8, 32);
    SolverParams params;
    params.dt = 0.125;
    SpectralState state = initial_state(free_wave, wave_grid);
    const double e0 = energy(state, wave_grid, free_wave);
    double drift = 0.0;
    evolve(state, free_wave, wave_grid, params, 125.0,
           [&](const SpectralState& s, const StepReport&) {
               drift = std::max(drift,
                                std::abs(energy(s, wave_grid, free_wave) - e0) / std::abs(e0));
           });

    const bool pass =
        round_trip <= 1e-13 && identities <= 1e-13 && residual <= 1e-6 && drift <= 1e-12;
    return {pass, "properties: round trip = " + fmt(round_trip) + " (<= 1e-13), identities = " +
                      fmt(identities) + " (<= 1e-13), wave residual = " + fmt(residual) +
                      " (<= 1e-6), free energy drift over 1000 steps = " + fmt(drift) +
                      " (<= 1e-12)"};
}

Outcome check_cost_scaling() {
    // dt small enough that the iteration count stays flat across sizes, so
    // per-step time tracks the transform cost.
    const ProblemSpec problem = make_sine_gordon();
    const double dt = std::ldexp(1.0, -16);

    std::vector<std::pair<double, double>> samples;  // (N log2 N, seconds per step)
    for (int m = 5; m <= 12; m++) {
        const int n = 1 << m;
        const GridSpec grid(problem.length, n, default_points(problem.nonlinearity, n));
        SolverParams params;
        params.dt = dt;
        SpectralState state = initial_state(problem, grid);
        state = step(state, problem, grid, params);  // warm-up builds the plans
        const int steps = m <= 9 ? (1 << (11 - m)) : 4;
        const auto start = std::chrono::steady_clock::now();
        for (int s = 0; s < steps; s++) state = step(state, problem, grid, params);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        samples.emplace_back(n * std::log2(static_cast<double>(n)), elapsed / steps);
    }

    // Geometric-mean fit of t = C N log2 N, then the worst multiplicative
    // deviation from that model in either direction.
    long double acc = 0.0L;
    for (const auto& [model, seconds] : samples) acc += std::log(seconds / model);
    const double c = std::exp(static_cast<double>(acc / samples.size()));
    double worst = 1.0;
    for (const auto& [model, seconds] : samples) {
        const double ratio = seconds / (c * model);
        worst = std::max(worst, std::max(ratio, 1.0 / ratio));
    }
    return {worst <= 2.0, "per-step cost vs N log N over N = 2^5..2^12: max deviation factor = " +
                              fmt(worst) + " (informative, want <= 2)"};
}

}  // namespace

int main() {
    struct Check {
        int index;
        Outcome (*fn)();
    };
    const Check hard_checks[] = {
        {1, check_elliptic_constant},   {2, check_linear_order},
        {3, check_precision_floor},     {4, check_resolution_independence},
        {5, check_sine_gordon_order},   {6, check_spatial_saturation},
        {7, check_dealiasing},          {8, check_properties},
    };
    for (const Check& check : hard_checks) {
        Outcome outcome;
        try {
            outcome = check.fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("unexpected exception: ") + e.what()};
        }
        verdict(check.index, outcome.pass, outcome.detail);
    }

    Outcome soft;
    try {
        soft = check_cost_scaling();
    } catch (const std::exception& e) {
        soft = {false, std::string("unexpected exception: ") + e.what()};
    }
    soft_verdict(9, soft.pass, soft.detail);

    std::cout << "acceptance: " << (8 - hard_failures) << "/8 hard checks passed\n";
    return hard_failures == 0 ? 0 : 1;
}
