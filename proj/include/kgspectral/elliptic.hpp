#pragma once

namespace kgspectral {

/// sn(x,k), cn(x,k), dn(x,k) evaluated at a common argument.
struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

/// Complete elliptic integral of the first kind K(k), with k the modulus
/// (not the parameter m = k^2). Computed by the arithmetic-geometric mean,
/// K = pi / (2 agm(1, k')). Throws std::domain_error unless 0 <= k < 1.
double complete_elliptic_k(double k);

/// Jacobi elliptic functions by the descending Landen transformation
/// (Abramowitz & Stegun 16.4). Valid for all finite real x and 0 <= k < 1;
/// throws std::domain_error otherwise.
JacobiTriple jacobi_sn_cn_dn(double x, double k);

}  // namespace kgspectral
