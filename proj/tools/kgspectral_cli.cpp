#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgspectral/csvio.hpp"
#include "kgspectral/errors.hpp"
#include "kgspectral/runner.hpp"

namespace {

std::map<std::string, std::string> load_pairs(const std::string& path,
                                              const std::vector<std::string>& overrides) {
    std::map<std::string, std::string> pairs = kgspectral::read_config_file(path);
    for (const std::string& assignment : overrides)
        kgspectral::apply_override(pairs, assignment);
    return pairs;
}

std::ofstream open_output(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw kgspectral::ConfigError("cannot write \"" + path + "\"");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier spectral solver for periodic nonlinear wave equations"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_path;

    CLI::App* run = app.add_subcommand("run", "evolve one configuration and write artifacts");
    run->add_option("--config", config_path, "key=value configuration file")->required();
    run->add_option("--set", overrides, "override a config entry (key=value)");

    CLI::App* sweep = app.add_subcommand("sweep", "run a (dt, N) sweep and write a CSV table");
    sweep->add_option("--config", config_path, "key=value configuration file")->required();
    sweep->add_option("--set", overrides, "override a config entry (key=value)");
    sweep->add_option("--output", output_path, "sweep CSV path (default <output_dir>/sweep.csv)");

    std::string problem_name = "linear-kg";
    std::string times_text = "0";
    int exact_modes = 32;
    double exact_length = 0.0;
    CLI::App* exact = app.add_subcommand("exact", "print exact-solution samples as CSV");
    exact->add_option("--problem", problem_name, "problem name")->required();
    exact->add_option("--t", times_text, "comma-separated times")->required();
    exact->add_option("--n", exact_modes, "mode count fixing the sample grid");
    exact->add_option("--length", exact_length, "domain length override");
    exact->add_option("--output", output_path, "output path (default stdout)");

    std::string input_path;
    CLI::App* order = app.add_subcommand("order", "convergence orders from a sweep CSV");
    order->add_option("--input", input_path, "sweep CSV to post-process")->required();
    order->add_option("--output", output_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // For the non-convergence diagnostic row in run mode.
    int diag_modes = 0;
    double diag_dt = 0.0;

    try {
        if (run->parsed()) {
            const kgspectral::RunConfig config =
                kgspectral::parse_run_config(load_pairs(config_path, overrides));
            diag_modes = config.modes;
            diag_dt = config.dt;
            const kgspectral::RunResult result = kgspectral::simulate(config);
            kgspectral::write_run_artifacts(result, config.output_dir);
            std::cout << "run: problem=" << result.config.problem << " N=" << result.config.modes
                      << " J=" << *result.config.points << " steps=" << result.steps.size()
                      << " -> " << config.output_dir << "\n";
            if (result.has_exact && !result.error_summary.empty()) {
                const kgspectral::ErrorSummaryRow& last = result.error_summary.back();
                std::cout << "errors at t=" << kgspectral::format_double(last.time)
                          << ": u=" << kgspectral::format_double(last.error_u)
                          << " v=" << kgspectral::format_double(last.error_v) << "\n";
            }
        } else if (sweep->parsed()) {
            const kgspectral::SweepConfig config =
                kgspectral::parse_sweep_config(load_pairs(config_path, overrides));
            const std::vector<kgspectral::SweepRow> rows = kgspectral::run_sweep(config);
            const std::string path =
                output_path.empty() ? config.base.output_dir + "/sweep.csv" : output_path;
            std::ofstream out = open_output(path);
            kgspectral::write_sweep_csv(rows, out);
            std::cout << "sweep: " << rows.size() << " cells -> " << path << "\n";
        } else if (exact->parsed()) {
            const std::vector<double> times = kgspectral::parse_real_list(times_text);
            std::optional<double> length;
            if (exact->count("--length") > 0) length = exact_length;
            if (output_path.empty()) {
                kgspectral::emit_exact(problem_name, length, exact_modes, times, std::cout);
            } else {
                std::ofstream out = open_output(output_path);
                kgspectral::emit_exact(problem_name, length, exact_modes, times, out);
            }
        } else if (order->parsed()) {
            std::ifstream in(input_path);
            if (!in) throw kgspectral::ConfigError("cannot read \"" + input_path + "\"");
            const std::vector<kgspectral::OrderRow> rows =
                kgspectral::compute_orders(kgspectral::read_sweep_csv(in));
            if (output_path.empty()) {
                kgspectral::write_order_csv(rows, std::cout);
            } else {
                std::ofstream out = open_output(output_path);
                kgspectral::write_order_csv(rows, out);
            }
        }
    } catch (const kgspectral::StepFailure& failure) {
        std::cerr << "error: " << failure.what() << "\n";
        std::cerr << "N=" << diag_modes << ",dt=" << kgspectral::format_double(diag_dt)
                  << ",step="
                  << (failure.step_index == kgspectral::StepFailure::kNoStep
                          ? std::string("?")
                          : std::to_string(failure.step_index))
                  << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
