#pragma once

#include <vector>

#include "kgspectral/grid.hpp"

namespace kgspectral {

/// Truncated real Fourier coefficients of a field on [0, L):
///
///   f(x) = zero_mode + sum_{l=1..N} cos_modes[l-1] cos(2 pi l x / L)
///                    + sum_{l=1..N} sin_modes[l-1] sin(2 pi l x / L)
///
/// There is no sine zero mode; the layout encodes that structurally.
struct RealCoeffs {
    double zero_mode = 0.0;
    std::vector<double> cos_modes;
    std::vector<double> sin_modes;

    RealCoeffs() = default;
    explicit RealCoeffs(int modes)
        : cos_modes(static_cast<std::size_t>(modes), 0.0),
          sin_modes(static_cast<std::size_t>(modes), 0.0) {}

    int modes() const { return static_cast<int>(cos_modes.size()); }
    double max_abs() const;
    bool all_finite() const;
};

/// Point samples of a field at the collocation points of a GridSpec.
struct GridField {
    std::vector<double> samples;

    GridField() = default;
    explicit GridField(int points) : samples(static_cast<std::size_t>(points), 0.0) {}
    explicit GridField(std::vector<double> values) : samples(std::move(values)) {}

    int points() const { return static_cast<int>(samples.size()); }
    bool all_finite() const;
};

/// Which transform kernel to use. Fft is the production path (FFTW,
/// O(J log J)); DirectSum is the O(NJ) summation kept as the in-repo
/// reference for verification and benchmarking.
enum class TransformPath { Fft, DirectSum };

/// Evaluate the truncated Fourier series at the collocation points.
/// The FFT path zero-pads the N-mode spectrum to J bins and inverts.
GridField synthesize(const RealCoeffs& coeffs, const GridSpec& grid,
                     TransformPath path = TransformPath::Fft);

/// Project grid samples onto the truncated Fourier basis with the
/// rectangle-rule quadrature weights 1/J (zero mode) and 2/J (l >= 1):
///
///   zero_mode    = (1/J) sum_j f_j
///   cos_modes[l] = (2/J) sum_j f_j cos(2 pi l x_j / L)
///   sin_modes[l] = (2/J) sum_j f_j sin(2 pi l x_j / L)
///
/// Any normalization of the underlying FFT is absorbed here so that the
/// output is exactly these quadrature sums.
RealCoeffs analyze(const GridField& field, const GridSpec& grid,
                   TransformPath path = TransformPath::Fft);

}  // namespace kgspectral
