#include "kgspectral/grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kgspectral/errors.hpp"

namespace kgspectral {

GridSpec::GridSpec(double length, int modes, int points)
    : length_(length), modes_(modes), points_(points) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw ContractError("GridSpec: domain length must be positive and finite");
    if (modes < 1)
        throw ContractError("GridSpec: need at least one Fourier mode pair");
    if (points < 2 * modes + 1)
        throw ContractError("GridSpec: J = " + std::to_string(points) +
                            " violates J >= 2N + 1 with N = " + std::to_string(modes));
    x_.resize(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j)
        x_[static_cast<std::size_t>(j)] = length * static_cast<double>(j) / static_cast<double>(points);
}

double GridSpec::wavenumber(int l) const {
    return 2.0 * std::numbers::pi * static_cast<double>(l) / length_;
}

int next_pow2_at_least(int n) {
    if (n < 1)
        throw ContractError("next_pow2_at_least: argument must be >= 1");
    int p = 1;
    while (p < n) {
        if (p > std::numeric_limits<int>::max() / 2)
            throw ContractError("next_pow2_at_least: overflow");
        p *= 2;
    }
    return p;
}

}  // namespace kgspectral
