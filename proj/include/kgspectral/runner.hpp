#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kgspectral/diagnostics.hpp"
#include "kgspectral/grid.hpp"
#include "kgspectral/problems.hpp"
#include "kgspectral/stepper.hpp"

namespace kgspectral {

/// One fully specified run. Everything is deterministic: no seeds, fixed
/// float formatting in all artifacts.
struct RunConfig {
    std::string problem = "linear-kg";
    std::optional<double> length;  // problem default when absent
    int modes = 32;
    std::optional<int> points;  // auto-selected when absent
    double theta = 0.5;
    double dt = 0.0009765625;  // 2^-10
    double t_final = 1.0;
    std::vector<double> snapshot_times;
    double fp_tol = 1e-14;
    int fp_max_iter = 100;
    std::string output_dir = ".";
    TransformPath transform = TransformPath::Fft;
};

/// A (dt, N) product sweep around a base configuration. dt_exponents e
/// means dt = 2^-e; n_exponents m means N = 2^m.
struct SweepConfig {
    RunConfig base;
    std::pair<int, int> dt_exponents = {4, 12};
    std::pair<int, int> n_exponents = {5, 5};
    bool parallel_cells = true;
};

/// Build configs from flat key=value pairs; unknown keys are rejected so
/// typos fail loudly. apply_override folds one "key=value" command-line
/// assignment into the pair map.
RunConfig parse_run_config(const std::map<std::string, std::string>& pairs);
SweepConfig parse_sweep_config(const std::map<std::string, std::string>& pairs);
void apply_override(std::map<std::string, std::string>& pairs, const std::string& assignment);

/// Problem, grid, and stepper parameters resolved from a config: optional
/// fields filled with their defaults and everything validated.
struct ResolvedCase {
    ProblemSpec problem;
    GridSpec grid;
    SolverParams params;
};
ResolvedCase resolve_case(const RunConfig& config);

/// Grid fields captured at one requested time. The t = 0 snapshot holds the
/// raw sampled initial data, not its truncated projection.
struct Snapshot {
    double time = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

struct StepRow {
    long long index = 0;
    double time = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

struct ErrorSummaryRow {
    double time = 0.0;
    double error_u = 0.0;
    double error_v = 0.0;
};

struct RunResult {
    RunConfig config;  // with length and points resolved
    std::vector<Snapshot> snapshots;
    std::vector<StepRow> steps;
    std::vector<ErrorSummaryRow> error_summary;
    std::vector<std::pair<ErrorReport, ErrorReport>> error_reports;  // (u, v) per snapshot
    bool has_exact = false;
};

/// Evolve the configured problem to t_final, capturing snapshots and, when
/// an exact solution is attached, error reports at every snapshot time and
/// at t_final. StepFailure propagates to the caller.
RunResult simulate(const RunConfig& config);

/// Write snapshot_<i>.csv, steps.csv and, when errors were computed,
/// errors.csv and error_summary.csv under the directory (created if
/// needed).
void write_run_artifacts(const RunResult& result, const std::string& directory);

struct SweepRow {
    int modes = 0;
    double dt = 0.0;
    double error_u = 0.0;
    double error_v = 0.0;
    int iterations_max = 0;
    bool converged = false;
    double wall_seconds = 0.0;
};

/// Run every (N, dt) cell of the sweep. Cells are independent; failures are
/// recorded in their row rather than aborting the sweep. Rows come back
/// sorted by N ascending, then dt descending.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

/// Exact-solution samples as CSV rows x,t,u_exact,v_exact for each listed
/// time. Requires a problem with an exact oracle.
void emit_exact(const std::string& problem_name, std::optional<double> length, int modes,
                const std::vector<double>& times, std::ostream& out);

/// Observed convergence orders from a sweep table: one row per adjacent dt
/// pair within each N group.
struct OrderRow {
    int modes = 0;
    double dt_coarse = 0.0;
    double dt_fine = 0.0;
    double p_u = 0.0;
    double p_v = 0.0;
};
std::vector<OrderRow> compute_orders(const std::vector<SweepRow>& rows);
void write_order_csv(const std::vector<OrderRow>& rows, std::ostream& out);

}  // namespace kgspectral
