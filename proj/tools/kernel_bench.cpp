#include <chrono>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgspectral/csvio.hpp"
#include "kgspectral/runner.hpp"
#include "kgspectral/stepper.hpp"

namespace {

/// Seconds per step for one (N, path) cell. One untimed step first so plan
/// setup and cache warming stay out of the measurement.
double seconds_per_step(const kgspectral::RunConfig& base, kgspectral::TransformPath path,
                        int steps) {
    kgspectral::RunConfig config = base;
    config.transform = path;
    const kgspectral::ResolvedCase rc = kgspectral::resolve_case(config);
    kgspectral::SolverParams params = rc.params;
    params.transform = path;

    kgspectral::SpectralState state = kgspectral::initial_state(rc.problem, rc.grid, path);
    state = kgspectral::step(state, rc.problem, rc.grid, params);

    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < steps; i++) state = kgspectral::step(state, rc.problem, rc.grid, params);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return elapsed / steps;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Per-step cost of the FFT kernel against the direct-summation reference"};
    std::string problem = "linear-kg";
    std::string n_range_text = "5..12";
    std::string dt_text = "2^-8";
    int direct_max_exp = 10;
    int steps = 8;
    app.add_option("--problem", problem, "problem name (default linear-kg)");
    app.add_option("--n-exponents", n_range_text, "range of N exponents, e.g. 5..12");
    app.add_option("--dt", dt_text, "step size (accepts 2^-k)");
    app.add_option("--direct-max", direct_max_exp,
                   "largest N exponent timed on the direct path (it is O(NJ))");
    app.add_option("--steps", steps, "timed steps per cell");
    CLI11_PARSE(app, argc, argv);

    try {
        const std::pair<int, int> n_range = kgspectral::parse_range(n_range_text);

        kgspectral::RunConfig base;
        base.problem = problem;
        base.dt = kgspectral::parse_real(dt_text);
        base.t_final = 0.0;

        std::cout << "N,J,path,seconds_per_step\n";
        std::vector<std::pair<int, double>> fft_times;  // (N, t)
        for (int e = n_range.first; e <= n_range.second; e++) {
            base.modes = 1 << e;
            const int points =
                kgspectral::default_points(kgspectral::make_problem(problem).nonlinearity,
                                           base.modes);
            const double t_fft =
                seconds_per_step(base, kgspectral::TransformPath::Fft, steps);
            fft_times.emplace_back(base.modes, t_fft);
            std::cout << base.modes << "," << points << ",fft,"
                      << kgspectral::format_double(t_fft) << "\n";
            if (e <= direct_max_exp) {
                const double t_direct =
                    seconds_per_step(base, kgspectral::TransformPath::DirectSum, steps);
                std::cout << base.modes << "," << points << ",direct,"
                          << kgspectral::format_double(t_direct) << "\n";
            }
        }

        // Slope of log t against log(N log2 N): 1 means the FFT path tracks
        // the N log N model.
        if (fft_times.size() >= 2) {
            double sx = 0.0, sy = 0.0;
            for (const auto& [n, t] : fft_times) {
                sx += std::log(n * std::log2(static_cast<double>(n)));
                sy += std::log(t);
            }
            const double mx = sx / fft_times.size(), my = sy / fft_times.size();
            double sxx = 0.0, sxy = 0.0;
            for (const auto& [n, t] : fft_times) {
                const double dx = std::log(n * std::log2(static_cast<double>(n))) - mx;
                sxy += dx * (std::log(t) - my);
                sxx += dx * dx;
            }
            std::cout << "# fft path exponent vs N log N model: "
                      << kgspectral::format_double(sxy / sxx) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
