#include "kgspectral/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "kgspectral/errors.hpp"

namespace kgspectral {

double pointwise_error(double exact, double numeric) {
    const double abs_err = std::abs(exact - numeric);
    if (exact == 0.0) return abs_err;
    return std::min(abs_err, abs_err / std::abs(exact));
}

ErrorReport field_error(const GridField& numeric,
                        const std::function<double(double, double)>& exact_fn,
                        const GridSpec& grid, double time, std::string field_label) {
    if (numeric.points() != grid.points())
        throw ContractError("field_error: sample count does not match grid");
    if (!exact_fn) throw ContractError("field_error: missing reference function");

    const int points = grid.points();
    ErrorReport report;
    report.per_point.resize(static_cast<std::size_t>(points));
    report.field_label = std::move(field_label);
    report.time = time;
#pragma omp parallel for
    for (int j = 0; j < points; j++)
        report.per_point[static_cast<std::size_t>(j)] =
            pointwise_error(exact_fn(grid.point(j), time),
                            numeric.samples[static_cast<std::size_t>(j)]);
    double worst = 0.0;
    for (double e : report.per_point) worst = std::max(worst, e);
    report.max_error = worst;
    return report;
}

double energy(const SpectralState& state, const GridSpec& grid, const ProblemSpec& problem,
              TransformPath path) {
    if (state.u_coeffs.modes() != grid.modes() || state.v_coeffs.modes() != grid.modes())
        throw ContractError("energy: state resolution does not match grid");
    switch (problem.nonlinearity.kind()) {
        case Nonlinearity::Kind::Zero:
        case Nonlinearity::Kind::Linear:
        case Nonlinearity::Kind::SineGordon:
        case Nonlinearity::Kind::Polynomial:
            break;
        default:
            throw UnsupportedDiagnostic("energy: forcing has no known potential");
    }

    // Spectral derivative: d/dx [a cos(kx) + b sin(kx)] = kb cos(kx) - ka sin(kx).
    const int modes = grid.modes();
    RealCoeffs deriv(modes);
    for (int l = 1; l <= modes; l++) {
        const std::size_t i = static_cast<std::size_t>(l - 1);
        const double k = grid.wavenumber(l);
        deriv.cos_modes[i] = k * state.u_coeffs.sin_modes[i];
        deriv.sin_modes[i] = -k * state.u_coeffs.cos_modes[i];
    }

    const GridField u = synthesize(state.u_coeffs, grid, path);
    const GridField v = synthesize(state.v_coeffs, grid, path);
    const GridField ux = synthesize(deriv, grid, path);

    const int points = grid.points();
    const Nonlinearity& nl = problem.nonlinearity;
    double sum = 0.0;
#pragma omp parallel for reduction(+ : sum)
    for (int j = 0; j < points; j++) {
        const std::size_t i = static_cast<std::size_t>(j);
        sum += 0.5 * v.samples[i] * v.samples[i] -
               0.5 * problem.alpha * ux.samples[i] * ux.samples[i] +
               problem.beta * nl.potential(u.samples[i]);
    }
    return sum * grid.length() / points;
}

std::vector<OrderEstimate> observed_order(const std::vector<std::pair<double, double>>& errors) {
    if (errors.size() < 2)
        throw ContractError("observed_order: need at least two (dt, error) rows");
    for (std::size_t i = 0; i + 1 < errors.size(); i++) {
        const double ratio = errors[i + 1].first / errors[i].first;
        if (!(std::abs(ratio - 0.5) <= 1e-9))
            throw ContractError("observed_order: dt values must halve between rows");
    }

    std::vector<OrderEstimate> orders;
    orders.reserve(errors.size() - 1);
    for (std::size_t i = 0; i + 1 < errors.size(); i++) {
        OrderEstimate est;
        est.dt_coarse = errors[i].first;
        est.dt_fine = errors[i + 1].first;
        if (errors[i].second > 0.0 && errors[i + 1].second > 0.0) {
            est.order = std::log2(errors[i].second / errors[i + 1].second);
            est.valid = true;
        } else {
            est.order = std::numeric_limits<double>::quiet_NaN();
            est.valid = false;
        }
        orders.push_back(est);
    }
    return orders;
}

double fitted_order(const std::vector<std::pair<double, double>>& errors) {
    double sx = 0.0, sy = 0.0;
    int n = 0;
    for (const auto& [dt, err] : errors) {
        if (!(dt > 0.0) || !(err > 0.0)) continue;
        sx += std::log(dt);
        sy += std::log(err);
        n++;
    }
    if (n < 2) throw ContractError("fitted_order: need at least two usable rows");
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [dt, err] : errors) {
        if (!(dt > 0.0) || !(err > 0.0)) continue;
        const double dx = std::log(dt) - mx;
        sxy += dx * (std::log(err) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw ContractError("fitted_order: dt values must not all coincide");
    return sxy / sxx;
}

}  // namespace kgspectral
