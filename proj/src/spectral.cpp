#include "kgspectral/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>

#include "kgspectral/errors.hpp"

namespace kgspectral {

namespace {

/// FFTW plan creation and destruction are not thread safe; executions are.
/// The mutex is leaked on purpose so that thread_local workspace destructors
/// running at thread exit can still lock it.
std::mutex& plan_mutex() {
    static std::mutex* m = new std::mutex;
    return *m;
}

/// One r2c/c2r plan pair with its aligned buffers, reused for every
/// transform of the same size on the owning thread.
struct FftwWorkspace {
    int points = 0;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;

    FftwWorkspace() = default;
    FftwWorkspace(const FftwWorkspace&) = delete;
    FftwWorkspace& operator=(const FftwWorkspace&) = delete;

    void init(int n) {
        std::lock_guard<std::mutex> lock(plan_mutex());
        points = n;
        real = fftw_alloc_real(static_cast<std::size_t>(n));
        spec = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
        // FFTW_ESTIMATE keeps planning deterministic and cheap; these sizes
        // are hit thousands of times, so plan quality is irrelevant next to
        // reproducibility.
        forward = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
        inverse = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    }

    ~FftwWorkspace() {
        if (points == 0) return;
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(inverse);
        fftw_free(real);
        fftw_free(spec);
    }
};

FftwWorkspace& workspace_for(int points) {
    thread_local std::map<int, FftwWorkspace> cache;
    FftwWorkspace& ws = cache[points];
    if (ws.points == 0) ws.init(points);
    return ws;
}

/// cos/sin lookup tables at the J roots of unity. The index for mode l at
/// point j is (l*j) mod J, computed in 64-bit so l*j cannot overflow.
struct TrigTable {
    std::vector<double> cs;
    std::vector<double> sn;

    explicit TrigTable(int points)
        : cs(static_cast<std::size_t>(points)), sn(static_cast<std::size_t>(points)) {
        const double w = 2.0 * std::numbers::pi / points;
        for (int m = 0; m < points; m++) {
            cs[static_cast<std::size_t>(m)] = std::cos(w * m);
            sn[static_cast<std::size_t>(m)] = std::sin(w * m);
        }
    }
};

GridField synthesize_fft(const RealCoeffs& coeffs, const GridSpec& grid) {
    const int points = grid.points();
    const int modes = grid.modes();
    FftwWorkspace& ws = workspace_for(points);

    // Pack the real series into hermitian bins: bin 0 carries the mean, bin
    // l carries (cos_l/2, -sin_l/2). J >= 2N+1 keeps every mode strictly
    // below the Nyquist bin, so the unnormalized c2r reproduces the series
    // values exactly.
    const int bins = points / 2 + 1;
    for (int l = 0; l < bins; l++) {
        ws.spec[l][0] = 0.0;
        ws.spec[l][1] = 0.0;
    }
    ws.spec[0][0] = coeffs.zero_mode;
    for (int l = 1; l <= modes; l++) {
        ws.spec[l][0] = 0.5 * coeffs.cos_modes[static_cast<std::size_t>(l - 1)];
        ws.spec[l][1] = -0.5 * coeffs.sin_modes[static_cast<std::size_t>(l - 1)];
    }
    fftw_execute(ws.inverse);

    GridField field(points);
    for (int j = 0; j < points; j++) field.samples[static_cast<std::size_t>(j)] = ws.real[j];
    return field;
}

RealCoeffs analyze_fft(const GridField& field, const GridSpec& grid) {
    const int points = grid.points();
    const int modes = grid.modes();
    FftwWorkspace& ws = workspace_for(points);

    for (int j = 0; j < points; j++) ws.real[j] = field.samples[static_cast<std::size_t>(j)];
    fftw_execute(ws.forward);

    RealCoeffs coeffs(modes);
    const double scale = 1.0 / points;
    coeffs.zero_mode = ws.spec[0][0] * scale;
    for (int l = 1; l <= modes; l++) {
        coeffs.cos_modes[static_cast<std::size_t>(l - 1)] = 2.0 * scale * ws.spec[l][0];
        coeffs.sin_modes[static_cast<std::size_t>(l - 1)] = -2.0 * scale * ws.spec[l][1];
    }
    return coeffs;
}

GridField synthesize_direct(const RealCoeffs& coeffs, const GridSpec& grid) {
    const int points = grid.points();
    const int modes = grid.modes();
    const TrigTable table(points);

    GridField field(points);
#pragma omp parallel for
    for (int j = 0; j < points; j++) {
        double sum = coeffs.zero_mode;
        for (int l = 1; l <= modes; l++) {
            const std::size_t m =
                static_cast<std::size_t>(static_cast<std::int64_t>(l) * j % points);
            sum += coeffs.cos_modes[static_cast<std::size_t>(l - 1)] * table.cs[m] +
                   coeffs.sin_modes[static_cast<std::size_t>(l - 1)] * table.sn[m];
        }
        field.samples[static_cast<std::size_t>(j)] = sum;
    }
    return field;
}

RealCoeffs analyze_direct(const GridField& field, const GridSpec& grid) {
    const int points = grid.points();
    const int modes = grid.modes();
    const TrigTable table(points);

    RealCoeffs coeffs(modes);
    double mean = 0.0;
    for (int j = 0; j < points; j++) mean += field.samples[static_cast<std::size_t>(j)];
    coeffs.zero_mode = mean / points;

#pragma omp parallel for
    for (int l = 1; l <= modes; l++) {
        double ca = 0.0, sa = 0.0;
        for (int j = 0; j < points; j++) {
            const std::size_t m =
                static_cast<std::size_t>(static_cast<std::int64_t>(l) * j % points);
            ca += field.samples[static_cast<std::size_t>(j)] * table.cs[m];
            sa += field.samples[static_cast<std::size_t>(j)] * table.sn[m];
        }
        coeffs.cos_modes[static_cast<std::size_t>(l - 1)] = 2.0 * ca / points;
        coeffs.sin_modes[static_cast<std::size_t>(l - 1)] = 2.0 * sa / points;
    }
    return coeffs;
}

}  // namespace

double RealCoeffs::max_abs() const {
    double m = std::abs(zero_mode);
    for (double x : cos_modes) m = std::max(m, std::abs(x));
    for (double x : sin_modes) m = std::max(m, std::abs(x));
    return m;
}

bool RealCoeffs::all_finite() const {
    if (!std::isfinite(zero_mode)) return false;
    for (double x : cos_modes)
        if (!std::isfinite(x)) return false;
    for (double x : sin_modes)
        if (!std::isfinite(x)) return false;
    return true;
}

bool GridField::all_finite() const {
    for (double x : samples)
        if (!std::isfinite(x)) return false;
    return true;
}

GridField synthesize(const RealCoeffs& coeffs, const GridSpec& grid, TransformPath path) {
    if (coeffs.modes() != grid.modes())
        throw ContractError("synthesize: coefficient count " + std::to_string(coeffs.modes()) +
                            " does not match grid modes " + std::to_string(grid.modes()));
    if (static_cast<int>(coeffs.sin_modes.size()) != coeffs.modes())
        throw ContractError("synthesize: cos/sin mode arrays differ in length");
    if (!coeffs.all_finite()) throw ContractError("synthesize: non-finite coefficient");
    return path == TransformPath::Fft ? synthesize_fft(coeffs, grid)
                                      : synthesize_direct(coeffs, grid);
}

RealCoeffs analyze(const GridField& field, const GridSpec& grid, TransformPath path) {
    if (field.points() != grid.points())
        throw ContractError("analyze: sample count " + std::to_string(field.points()) +
                            " does not match grid points " + std::to_string(grid.points()));
    if (!field.all_finite()) throw ContractError("analyze: non-finite sample");
    return path == TransformPath::Fft ? analyze_fft(field, grid) : analyze_direct(field, grid);
}

}  // namespace kgspectral
