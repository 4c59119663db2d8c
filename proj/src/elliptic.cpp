#include "kgspectral/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kgspectral {

namespace {

constexpr int kMaxAgmIterations = 64;

void check_modulus(double k) {
    if (!(k >= 0.0 && k < 1.0))
        throw std::domain_error("elliptic: modulus k = " + std::to_string(k) +
                                " outside [0, 1)");
}

}  // namespace

double complete_elliptic_k(double k) {
    check_modulus(k);
    // agm(1, k') converges quadratically; the loop exits once a and b agree
    // to the last ulp. (1-k)(1+k) loses no precision for k near 1.
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    for (int i = 0; i < kMaxAgmIterations && a - b > a * 1e-17; i++) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (a + b);
}

JacobiTriple jacobi_sn_cn_dn(double x, double k) {
    check_modulus(k);
    if (!std::isfinite(x)) throw std::domain_error("elliptic: non-finite argument");

    // Descending Landen transformation, A&S 16.4. Run the AGM recording the
    // scales a_i and half-differences c_i, seed phi_n = 2^n a_n x, then
    // recover the amplitude by phi_{i-1} = (phi_i + asin((c_i/a_i) sin
    // phi_i)) / 2. For k = 0 the loop body never runs and phi_0 = x, which is
    // the correct circular limit.
    double a[kMaxAgmIterations + 1];
    double c[kMaxAgmIterations + 1];
    a[0] = 1.0;
    c[0] = k;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    int n = 0;
    while (n < kMaxAgmIterations && c[n] > a[n] * 1e-17) {
        const double an = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        n++;
        a[n] = an;
    }

    double phi = std::ldexp(a[n] * x, n);
    for (int i = n; i > 0; i--) {
        // Rounding can push the sine ratio marginally outside [-1, 1].
        const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(s));
    }

    JacobiTriple t;
    t.sn = std::sin(phi);
    t.cn = std::cos(phi);
    // dn from the defining identity dn^2 = 1 - k^2 sn^2; the cos-ratio form
    // of A&S degenerates to 0/0 at quarter periods.
    t.dn = std::sqrt((1.0 - k * t.sn) * (1.0 + k * t.sn));
    return t;
}

}  // namespace kgspectral
