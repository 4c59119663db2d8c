#pragma once

#include <vector>

namespace kgspectral {

/// Equispaced periodic collocation grid on [0, L).
///
/// Holds the domain length L, the number N of retained Fourier mode pairs
/// and the number J of collocation points x_j = j L / J, j = 0 .. J-1.
/// The point x = L is excluded (periodic identification with x = 0).
/// Construction enforces J >= 2N + 1, the minimum anti-aliasing requirement
/// for the N-mode quadrature to be exact on N-mode fields.
class GridSpec {
public:
    GridSpec(double length, int modes, int points);

    double length() const { return length_; }
    int modes() const { return modes_; }
    int points() const { return points_; }

    /// x_j = j L / J
    double point(int j) const { return x_[static_cast<std::size_t>(j)]; }
    const std::vector<double>& collocation_points() const { return x_; }

    /// 2 pi l / L
    double wavenumber(int l) const;

private:
    double length_;
    int modes_;
    int points_;
    std::vector<double> x_;
};

/// Smallest power of two >= n (n >= 1).
int next_pow2_at_least(int n);

}  // namespace kgspectral
