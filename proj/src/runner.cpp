#include "kgspectral/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "kgspectral/csvio.hpp"
#include "kgspectral/errors.hpp"

namespace kgspectral {

namespace {

constexpr const char* kSweepHeader = "N,dt,error_u,error_v,iters,converged,wall_seconds";

TransformPath parse_transform(const std::string& text) {
    if (text == "fft") return TransformPath::Fft;
    if (text == "direct") return TransformPath::DirectSum;
    throw ConfigError("transform must be fft or direct, got \"" + text + "\"");
}

bool is_step_multiple(double t, double dt) {
    const double steps = std::round(t / dt);
    return std::abs(steps * dt - t) <=
           4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
}

void fill_run_key(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "problem")
        config.problem = value;
    else if (key == "L")
        config.length = parse_real(value);
    else if (key == "N")
        config.modes = static_cast<int>(parse_integer(value));
    else if (key == "J")
        config.points = static_cast<int>(parse_integer(value));
    else if (key == "theta")
        config.theta = parse_real(value);
    else if (key == "dt")
        config.dt = parse_real(value);
    else if (key == "t_final")
        config.t_final = parse_real(value);
    else if (key == "snapshots")
        config.snapshot_times = parse_real_list(value);
    else if (key == "fp_tol")
        config.fp_tol = parse_real(value);
    else if (key == "fp_max_iter")
        config.fp_max_iter = static_cast<int>(parse_integer(value));
    else if (key == "output_dir")
        config.output_dir = value;
    else if (key == "transform")
        config.transform = parse_transform(value);
    else
        throw ConfigError("unknown config key \"" + key + "\"");
}

/// Errors of the synthesized state against the exact solution at the
/// state's own time.
std::pair<ErrorReport, ErrorReport> state_errors(const SpectralState& state,
                                                 const ProblemSpec& problem, const GridSpec& grid,
                                                 TransformPath path) {
    const GridField u = synthesize(state.u_coeffs, grid, path);
    const GridField v = synthesize(state.v_coeffs, grid, path);
    auto exact_u = [&problem](double x, double t) { return problem.exact(x, t).u; };
    auto exact_v = [&problem](double x, double t) { return problem.exact(x, t).v; };
    return {field_error(u, exact_u, grid, state.time, "u"),
            field_error(v, exact_v, grid, state.time, "v")};
}

std::pair<ErrorReport, ErrorReport> sample_errors(const Snapshot& snap,
                                                  const ProblemSpec& problem,
                                                  const GridSpec& grid) {
    auto exact_u = [&problem](double x, double t) { return problem.exact(x, t).u; };
    auto exact_v = [&problem](double x, double t) { return problem.exact(x, t).v; };
    return {field_error(GridField(snap.u), exact_u, grid, snap.time, "u"),
            field_error(GridField(snap.v), exact_v, grid, snap.time, "v")};
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write \"" + path.string() + "\"");
    out << body;
}

}  // namespace

RunConfig parse_run_config(const std::map<std::string, std::string>& pairs) {
    RunConfig config;
    for (const auto& [key, value] : pairs) fill_run_key(config, key, value);
    return config;
}

SweepConfig parse_sweep_config(const std::map<std::string, std::string>& pairs) {
    SweepConfig config;
    std::map<std::string, std::string> base_pairs;
    for (const auto& [key, value] : pairs) {
        if (key == "dt_exponents")
            config.dt_exponents = parse_range(value);
        else if (key == "N_exponents")
            config.n_exponents = parse_range(value);
        else if (key == "parallel_cells")
            config.parallel_cells = parse_flag(value);
        else
            base_pairs.emplace(key, value);
    }
    config.base = parse_run_config(base_pairs);
    return config;
}

void apply_override(std::map<std::string, std::string>& pairs, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || trim(assignment.substr(0, eq)).empty())
        throw ConfigError("override must be key=value, got \"" + assignment + "\"");
    pairs[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

ResolvedCase resolve_case(const RunConfig& config) {
    ProblemSpec problem = make_problem(config.problem, config.length);
    const int modes = config.modes;
    const int points = config.points ? *config.points
                                     : default_points(problem.nonlinearity, modes);

    if (!(config.t_final >= 0.0) || !std::isfinite(config.t_final))
        throw ConfigError("t_final must be nonnegative and finite");
    if (!(config.dt > 0.0) || !std::isfinite(config.dt))
        throw ConfigError("dt must be positive and finite");
    if (config.t_final > 0.0 && !is_step_multiple(config.t_final, config.dt))
        throw ConfigError("t_final is not a whole number of steps of dt");
    for (double t : config.snapshot_times) {
        if (!(t >= 0.0) || t > config.t_final)
            throw ConfigError("snapshot time " + format_double(t) + " outside [0, t_final]");
        if (!is_step_multiple(t, config.dt))
            throw ConfigError("snapshot time " + format_double(t) +
                              " is not a whole number of steps of dt");
    }

    SolverParams params;
    params.theta = config.theta;
    params.dt = config.dt;
    params.fp_tol = config.fp_tol;
    params.fp_max_iter = config.fp_max_iter;
    params.transform = config.transform;
    GridSpec grid(problem.length, modes, points);
    return ResolvedCase{std::move(problem), std::move(grid), params};
}

RunResult simulate(const RunConfig& config) {
    ResolvedCase rc = resolve_case(config);
    const GridSpec& grid = rc.grid;

    RunResult result;
    result.config = config;
    result.config.length = rc.problem.length;
    result.config.points = grid.points();
    result.has_exact = rc.problem.has_exact();

    if (rc.problem.initial_periodicity_defect() > 1e-12)
        std::cerr << "warning: initial data mismatch of "
                  << format_double(rc.problem.initial_periodicity_defect())
                  << " across the periodic seam\n";

    // Snapshot times, sorted and mapped to step counts. Time 0 is captured
    // as the raw samples of the initial data.
    std::vector<double> times = config.snapshot_times;
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<long long> snapshot_steps;
    for (double t : times) snapshot_steps.push_back(std::llround(t / config.dt));

    const int points = grid.points();
    if (!snapshot_steps.empty() && snapshot_steps.front() == 0) {
        Snapshot snap;
        snap.time = 0.0;
        snap.u.resize(static_cast<std::size_t>(points));
        snap.v.resize(static_cast<std::size_t>(points));
        for (int j = 0; j < points; j++) {
            snap.u[static_cast<std::size_t>(j)] = rc.problem.initial_u(grid.point(j));
            snap.v[static_cast<std::size_t>(j)] = rc.problem.initial_v(grid.point(j));
        }
        result.snapshots.push_back(std::move(snap));
    }

    SpectralState state = initial_state(rc.problem, grid, config.transform);
    long long step_index = 0;
    auto observer = [&](const SpectralState& accepted, const StepReport& report) {
        step_index++;
        result.steps.push_back(StepRow{step_index, accepted.time, report.iterations,
                                       report.final_residual, report.converged});
        if (std::binary_search(snapshot_steps.begin(), snapshot_steps.end(), step_index)) {
            Snapshot snap;
            snap.time = accepted.time;
            snap.u = synthesize(accepted.u_coeffs, grid, config.transform).samples;
            snap.v = synthesize(accepted.v_coeffs, grid, config.transform).samples;
            result.snapshots.push_back(std::move(snap));
        }
    };
    const SpectralState final_state =
        evolve(state, rc.problem, grid, rc.params, config.t_final, observer);

    if (result.has_exact) {
        for (const Snapshot& snap : result.snapshots) {
            auto reports = sample_errors(snap, rc.problem, grid);
            result.error_summary.push_back(
                ErrorSummaryRow{snap.time, reports.first.max_error, reports.second.max_error});
            result.error_reports.push_back(std::move(reports));
        }
        const bool final_covered = !snapshot_steps.empty() &&
                                   snapshot_steps.back() == std::llround(config.t_final / config.dt);
        if (!final_covered) {
            auto reports = state_errors(final_state, rc.problem, grid, config.transform);
            result.error_summary.push_back(ErrorSummaryRow{final_state.time,
                                                           reports.first.max_error,
                                                           reports.second.max_error});
        }
    }
    return result;
}

void write_run_artifacts(const RunResult& result, const std::string& directory) {
    const std::filesystem::path dir(directory);
    std::filesystem::create_directories(dir);

    const double length = *result.config.length;
    const int points = *result.config.points;
    const GridSpec grid(length, result.config.modes, points);

    for (std::size_t s = 0; s < result.snapshots.size(); s++) {
        const Snapshot& snap = result.snapshots[s];
        std::string body;
        body += "# problem=" + result.config.problem + " N=" + std::to_string(result.config.modes) +
                " J=" + std::to_string(points) + " L=" + format_double(length) +
                " theta=" + format_double(result.config.theta) +
                " dt=" + format_double(result.config.dt) + " t=" + format_double(snap.time) + "\n";
        body += "x,u,v\n";
        for (int j = 0; j < points; j++) {
            const std::size_t i = static_cast<std::size_t>(j);
            body += format_double(grid.point(j)) + "," + format_double(snap.u[i]) + "," +
                    format_double(snap.v[i]) + "\n";
        }
        write_file(dir / ("snapshot_" + std::to_string(s) + ".csv"), body);
    }

    std::string steps = "step,t,iterations,residual,converged\n";
    for (const StepRow& row : result.steps)
        steps += std::to_string(row.index) + "," + format_double(row.time) + "," +
                 std::to_string(row.iterations) + "," + format_double(row.residual) + "," +
                 (row.converged ? "1" : "0") + "\n";
    write_file(dir / "steps.csv", steps);

    if (!result.has_exact) return;

    std::string summary = "t,error_u,error_v\n";
    for (const ErrorSummaryRow& row : result.error_summary)
        summary += format_double(row.time) + "," + format_double(row.error_u) + "," +
                   format_double(row.error_v) + "\n";
    write_file(dir / "error_summary.csv", summary);

    std::string errors = "t,x,err_u,err_v\n";
    for (const auto& [report_u, report_v] : result.error_reports)
        for (int j = 0; j < points; j++) {
            const std::size_t i = static_cast<std::size_t>(j);
            errors += format_double(report_u.time) + "," + format_double(grid.point(j)) + "," +
                      format_double(report_u.per_point[i]) + "," +
                      format_double(report_v.per_point[i]) + "\n";
        }
    write_file(dir / "errors.csv", errors);
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    // Validate the base configuration once before fanning out; the sweep
    // needs an exact solution to measure errors against.
    {
        RunConfig probe = config.base;
        probe.snapshot_times.clear();
        ResolvedCase rc = resolve_case(probe);
        if (!rc.problem.has_exact())
            throw ConfigError("sweep requires a problem with an exact solution");
    }

    struct Cell {
        int n_exp;
        int dt_exp;
    };
    std::vector<Cell> cells;
    for (int m = config.n_exponents.first; m <= config.n_exponents.second; m++)
        for (int e = config.dt_exponents.first; e <= config.dt_exponents.second; e++)
            cells.push_back(Cell{m, e});

    std::vector<SweepRow> rows(cells.size());
    std::exception_ptr first_error;
    const int ncells = static_cast<int>(cells.size());

#pragma omp parallel for schedule(dynamic) if (config.parallel_cells)
    for (int c = 0; c < ncells; c++) {
        RunConfig cell_config = config.base;
        cell_config.modes = 1 << cells[static_cast<std::size_t>(c)].n_exp;
        cell_config.points.reset();
        cell_config.dt = std::ldexp(1.0, -cells[static_cast<std::size_t>(c)].dt_exp);
        cell_config.snapshot_times.clear();

        SweepRow row;
        row.modes = cell_config.modes;
        row.dt = cell_config.dt;
        row.error_u = std::numeric_limits<double>::quiet_NaN();
        row.error_v = std::numeric_limits<double>::quiet_NaN();

        const auto start = std::chrono::steady_clock::now();
        try {
            ResolvedCase rc = resolve_case(cell_config);
            SpectralState state = initial_state(rc.problem, rc.grid, cell_config.transform);
            int iterations_max = 0;
            auto observer = [&iterations_max](const SpectralState&, const StepReport& report) {
                iterations_max = std::max(iterations_max, report.iterations);
            };
            const SpectralState final_state =
                evolve(state, rc.problem, rc.grid, rc.params, cell_config.t_final, observer);
            auto reports = state_errors(final_state, rc.problem, rc.grid, cell_config.transform);
            row.error_u = reports.first.max_error;
            row.error_v = reports.second.max_error;
            row.iterations_max = iterations_max;
            row.converged = true;
        } catch (const StepFailure& failure) {
            row.iterations_max = failure.iterations;
            row.converged = false;
        } catch (...) {
#pragma omp critical(kgspectral_sweep_error)
            if (!first_error) first_error = std::current_exception();
        }
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rows[static_cast<std::size_t>(c)] = std::move(row);
    }
    if (first_error) std::rethrow_exception(first_error);

    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.modes != b.modes) return a.modes < b.modes;
        return a.dt > b.dt;
    });
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kSweepHeader << "\n";
    for (const SweepRow& row : rows)
        out << row.modes << "," << format_double(row.dt) << "," << format_double(row.error_u)
            << "," << format_double(row.error_v) << "," << row.iterations_max << ","
            << (row.converged ? "1" : "0") << "," << format_double(row.wall_seconds) << "\n";
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != kSweepHeader)
        throw ConfigError("sweep CSV must start with header \"" + std::string(kSweepHeader) +
                          "\"");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 7)
            throw ConfigError("sweep CSV row has " + std::to_string(fields.size()) +
                              " fields, expected 7");
        SweepRow row;
        row.modes = static_cast<int>(parse_integer(fields[0]));
        row.dt = parse_real(fields[1]);
        row.error_u = parse_real(fields[2]);
        row.error_v = parse_real(fields[3]);
        row.iterations_max = static_cast<int>(parse_integer(fields[4]));
        row.converged = parse_flag(fields[5]);
        row.wall_seconds = parse_real(fields[6]);
        rows.push_back(row);
    }
    return rows;
}

void emit_exact(const std::string& problem_name, std::optional<double> length, int modes,
                const std::vector<double>& times, std::ostream& out) {
    const ProblemSpec problem = make_problem(problem_name, length);
    if (!problem.has_exact())
        throw ConfigError("problem \"" + problem_name + "\" has no exact solution");
    const GridSpec grid(problem.length, modes, default_points(problem.nonlinearity, modes));

    out << "x,t,u_exact,v_exact\n";
    for (double t : times) {
        if (!std::isfinite(t)) throw ConfigError("exact: non-finite time");
        for (int j = 0; j < grid.points(); j++) {
            const PointValues pv = problem.exact(grid.point(j), t);
            out << format_double(grid.point(j)) << "," << format_double(t) << ","
                << format_double(pv.u) << "," << format_double(pv.v) << "\n";
        }
    }
}

std::vector<OrderRow> compute_orders(const std::vector<SweepRow>& rows) {
    std::map<int, std::vector<SweepRow>> groups;
    for (const SweepRow& row : rows) groups[row.modes].push_back(row);

    std::vector<OrderRow> out;
    for (auto& [modes, group] : groups) {
        if (group.size() < 2) continue;
        std::sort(group.begin(), group.end(),
                  [](const SweepRow& a, const SweepRow& b) { return a.dt > b.dt; });
        std::vector<std::pair<double, double>> table_u, table_v;
        for (const SweepRow& row : group) {
            table_u.emplace_back(row.dt, row.error_u);
            table_v.emplace_back(row.dt, row.error_v);
        }
        const std::vector<OrderEstimate> orders_u = observed_order(table_u);
        const std::vector<OrderEstimate> orders_v = observed_order(table_v);
        for (std::size_t i = 0; i < orders_u.size(); i++)
            out.push_back(OrderRow{modes, orders_u[i].dt_coarse, orders_u[i].dt_fine,
                                   orders_u[i].order, orders_v[i].order});
    }
    return out;
}

void write_order_csv(const std::vector<OrderRow>& rows, std::ostream& out) {
    out << "N,dt_pair,p_u,p_v\n";
    for (const OrderRow& row : rows)
        out << row.modes << "," << format_double(row.dt_coarse) << "->"
            << format_double(row.dt_fine) << "," << format_double(row.p_u) << ","
            << format_double(row.p_v) << "\n";
}

}  // namespace kgspectral
