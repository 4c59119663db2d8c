#include "kgspectral/problems.hpp"

#include <cmath>
#include <numbers>

#include "kgspectral/elliptic.hpp"
#include "kgspectral/errors.hpp"

namespace kgspectral {

Nonlinearity Nonlinearity::zero() { return Nonlinearity(Kind::Zero, {}); }

Nonlinearity Nonlinearity::linear() { return Nonlinearity(Kind::Linear, {}); }

Nonlinearity Nonlinearity::sine_gordon() { return Nonlinearity(Kind::SineGordon, {}); }

Nonlinearity Nonlinearity::polynomial(std::vector<double> coeffs) {
    // Drop trailing zeros so degree() reflects the terms that act.
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    for (double c : coeffs)
        if (!std::isfinite(c)) throw ContractError("Nonlinearity: non-finite coefficient");
    return Nonlinearity(Kind::Polynomial, std::move(coeffs));
}

double Nonlinearity::operator()(double u) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Linear:
            return u;
        case Kind::SineGordon:
            return std::sin(u);
        case Kind::Polynomial: {
            double f = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > 0;) f = f * u + coeffs_[i];
            return f;
        }
    }
    return 0.0;
}

double Nonlinearity::potential(double u) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Linear:
            return 0.5 * u * u;
        case Kind::SineGordon:
            return 1.0 - std::cos(u);
        case Kind::Polynomial: {
            // G(u) = sum_i coeffs[i] u^{i+1} / (i+1), by Horner in u.
            double g = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > 0;) g = g * u + coeffs_[i] / (i + 1.0);
            return g * u;
        }
    }
    return 0.0;
}

int Nonlinearity::degree() const {
    switch (kind_) {
        case Kind::Zero:
            return 0;
        case Kind::Linear:
            return 1;
        case Kind::SineGordon:
            return -1;
        case Kind::Polynomial:
            return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
    }
    return 0;
}

int Nonlinearity::dealias_bound(int modes) const {
    // A degree-M image of an N-mode series fills MN modes; resolving it with
    // the J-point rectangle rule needs J >= (M+1)N+1 so no product aliases
    // onto a retained mode. sin u is not polynomial; treating it at cubic
    // resolution keeps the dominant aliasing terms out.
    const int floor = 2 * modes + 1;
    switch (kind_) {
        case Kind::Zero:
            return floor;
        case Kind::Linear:
            return floor;
        case Kind::SineGordon:
            return 4 * modes + 1;
        case Kind::Polynomial: {
            const int m = degree();
            return std::max(floor, (m + 1) * modes + 1);
        }
    }
    return floor;
}

double ProblemSpec::initial_periodicity_defect() const {
    if (!initial_u || !initial_v) throw ContractError("ProblemSpec: missing initial data");
    const double du = std::abs(initial_u(length) - initial_u(0.0));
    const double dv = std::abs(initial_v(length) - initial_v(0.0));
    return std::max(du, dv);
}

GridField apply_nonlinearity(const GridField& field, const Nonlinearity& nl) {
    const int points = field.points();
    GridField out(points);
    if (nl.kind() == Nonlinearity::Kind::Zero) return out;
#pragma omp parallel for
    for (int j = 0; j < points; j++)
        out.samples[static_cast<std::size_t>(j)] = nl(field.samples[static_cast<std::size_t>(j)]);
    if (!out.all_finite()) throw ContractError("apply_nonlinearity: non-finite value");
    return out;
}

RealCoeffs nonlinear_spectrum(const RealCoeffs& u, const GridSpec& grid, const Nonlinearity& nl,
                              TransformPath path, bool strict) {
    if (strict && grid.points() < nl.dealias_bound(grid.modes()))
        throw AliasingError("nonlinear_spectrum: J = " + std::to_string(grid.points()) +
                            " below dealias bound " +
                            std::to_string(nl.dealias_bound(grid.modes())));
    return analyze(apply_nonlinearity(synthesize(u, grid, path), nl), grid, path);
}

int default_points(const Nonlinearity& nl, int modes) {
    return next_pow2_at_least(std::max(2 * modes + 1, nl.dealias_bound(modes)));
}

PointValues linear_exact(double x, double t, double length) {
    const double kx = 2.0 * std::numbers::pi / length;
    const double w = std::sqrt(1.0 + kx * kx);
    const double profile = std::cos(kx * x);
    return {std::sin(w * t) / w * profile, std::cos(w * t) * profile};
}

PointValues sine_gordon_exact(double x, double t) {
    const double s = x - std::sqrt(2.0) * t;
    const JacobiTriple j = jacobi_sn_cn_dn(s, 0.5);
    const double u = 2.0 * std::asin(0.5 * j.sn);
    const double v = -std::sqrt(2.0) * j.cn * j.dn / std::sqrt(1.0 - 0.25 * j.sn * j.sn);
    return {u, v};
}

double sine_gordon_period() { return 4.0 * complete_elliptic_k(0.5); }

ProblemSpec make_linear_kg(double length) {
    ProblemSpec p;
    p.name = "linear-kg";
    p.alpha = -1.0;
    p.beta = 1.0;
    p.length = length;
    p.nonlinearity = Nonlinearity::linear();
    p.initial_u = [length](double x) { return linear_exact(x, 0.0, length).u; };
    p.initial_v = [length](double x) { return linear_exact(x, 0.0, length).v; };
    p.exact = [length](double x, double t) { return linear_exact(x, t, length); };
    return p;
}

ProblemSpec make_sine_gordon(double length) {
    ProblemSpec p;
    p.name = "sine-gordon";
    p.alpha = -1.0;
    p.beta = 1.0;
    p.length = length;
    p.nonlinearity = Nonlinearity::sine_gordon();
    p.initial_u = [](double x) { return sine_gordon_exact(x, 0.0).u; };
    p.initial_v = [](double x) { return sine_gordon_exact(x, 0.0).v; };
    p.exact = [](double x, double t) { return sine_gordon_exact(x, t); };
    return p;
}

ProblemSpec make_custom_polynomial(std::vector<double> coeffs, double alpha, double beta,
                                   double length) {
    ProblemSpec p;
    p.name = "polynomial";
    p.alpha = alpha;
    p.beta = beta;
    p.length = length;
    p.nonlinearity = Nonlinearity::polynomial(std::move(coeffs));
    const double kx = 2.0 * std::numbers::pi / length;
    p.initial_u = [](double) { return 0.0; };
    p.initial_v = [kx](double x) { return std::cos(kx * x); };
    return p;
}

ProblemSpec make_problem(const std::string& name, std::optional<double> length) {
    if (name == "linear-kg") return length ? make_linear_kg(*length) : make_linear_kg();
    if (name == "sine-gordon") return length ? make_sine_gordon(*length) : make_sine_gordon();
    throw ConfigError("unknown problem \"" + name + "\" (expected linear-kg or sine-gordon)");
}

}  // namespace kgspectral
