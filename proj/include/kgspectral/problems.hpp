#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kgspectral/grid.hpp"
#include "kgspectral/spectral.hpp"

namespace kgspectral {

/// Pointwise forcing F(u) for the wave equation
///
///   u_tt + alpha u_xx + beta F(u) = 0.
///
/// Carries both F and its antiderivative G (G' = F, G(0) = 0) so energy
/// diagnostics stay consistent with the forcing, plus the quadrature
/// resolution needed to evaluate F(u) without aliasing back into the
/// retained modes.
class Nonlinearity {
  public:
    enum class Kind { Zero, Linear, SineGordon, Polynomial };

    static Nonlinearity zero();
    static Nonlinearity linear();
    static Nonlinearity sine_gordon();
    /// F(u) = sum_i coeffs[i] u^i.
    static Nonlinearity polynomial(std::vector<double> coeffs);

    Kind kind() const { return kind_; }

    /// F(u).
    double operator()(double u) const;

    /// G(u) with G' = F and G(0) = 0.
    double potential(double u) const;

    /// Degree of F as a polynomial in u, or -1 when F is not polynomial.
    int degree() const;

    /// Smallest J for which the quadrature of F(u) over J points is exact
    /// for the retained modes: (M+1)N+1 for degree-M polynomials, 4N+1 for
    /// sin u (treated as cubic for resolution purposes), 2N+1 otherwise.
    int dealias_bound(int modes) const;

    const std::vector<double>& coefficients() const { return coeffs_; }

  private:
    Nonlinearity(Kind kind, std::vector<double> coeffs)
        : kind_(kind), coeffs_(std::move(coeffs)) {}

    Kind kind_;
    std::vector<double> coeffs_;
};

/// A solution value and its time derivative at one point.
struct PointValues {
    double u;
    double v;
};

/// One initial-boundary value problem on the periodic domain [0, L):
/// coefficients, forcing, initial data, and (when known) the exact
/// solution used for error reporting.
struct ProblemSpec {
    std::string name;
    double alpha = -1.0;
    double beta = 1.0;
    double length = 8.0;
    Nonlinearity nonlinearity = Nonlinearity::zero();
    std::function<double(double)> initial_u;
    std::function<double(double)> initial_v;
    std::function<PointValues(double, double)> exact;  // (x, t); may be empty

    bool has_exact() const { return static_cast<bool>(exact); }

    /// Mismatch of the initial data across the periodic seam,
    /// max(|f(L) - f(0)|, |g(L) - g(0)|). Exactly periodic data gives 0;
    /// travelling waves restricted to an incommensurate box give a small
    /// positive defect.
    double initial_periodicity_defect() const;
};

/// F(u) sampled at every grid point. Throws ContractError if any output is
/// non-finite.
GridField apply_nonlinearity(const GridField& field, const Nonlinearity& nl);

/// Fourier coefficients of F(u): synthesize u on the grid, apply F
/// pointwise, project back. With strict set, refuses grids below the
/// dealias bound by throwing AliasingError.
RealCoeffs nonlinear_spectrum(const RealCoeffs& u, const GridSpec& grid, const Nonlinearity& nl,
                              TransformPath path = TransformPath::Fft, bool strict = false);

/// Default quadrature size for N retained modes: the smallest power of two
/// at or above both 2N+1 and the dealias bound of the forcing.
int default_points(const Nonlinearity& nl, int modes);

/// Standing wave for u_tt = u_xx - u on [0, L):
/// u = sin(w t) cos(2 pi x / L) / w with w = sqrt(1 + (2 pi / L)^2).
PointValues linear_exact(double x, double t, double length);

/// Travelling kink-like wave for u_tt = u_xx - sin u:
/// u = 2 asin(sn(s, 1/2) / 2) with s = x - sqrt(2) t.
PointValues sine_gordon_exact(double x, double t);

/// Spatial period 4 K(1/2) of the travelling wave above.
double sine_gordon_period();

ProblemSpec make_linear_kg(double length = 8.0);
ProblemSpec make_sine_gordon(double length = sine_gordon_period());
/// Polynomial forcing with the defaults alpha = -1, beta = 1, so the PDE
/// reads u_tt = u_xx - F(u). Initial data u(x,0) = 0,
/// v(x,0) = cos(2 pi x / L); no exact solution attached.
ProblemSpec make_custom_polynomial(std::vector<double> coeffs, double alpha = -1.0,
                                   double beta = 1.0, double length = 8.0);

/// Look up a named problem ("linear-kg" or "sine-gordon"), overriding the
/// domain length when given. Throws ConfigError for unknown names.
ProblemSpec make_problem(const std::string& name, std::optional<double> length = {});

}  // namespace kgspectral
