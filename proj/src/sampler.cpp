#include "gibbslab/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "gibbslab/rng.hpp"

namespace gibbslab {

double dispersion_symbol(const Mode& n, double s, bool massive) {
    double r2 = 0.0;
    r2 += static_cast<double>(n[0]) * n[0];
    r2 += static_cast<double>(n[1]) * n[1];
    r2 += static_cast<double>(n[2]) * n[2];
    if (massive) return std::pow(1.0 + 4.0 * M_PI * M_PI * r2, 0.5 * s);
    return std::pow(2.0 * M_PI * std::sqrt(r2), s);
}

std::vector<Mode> ball_modes(int d, int N, bool includeZero) {
    std::vector<Mode> modes;
    GridSpec g{d, N, next_power_of_two(2 * N + 2), 1.0};
    const double n2max = static_cast<double>(N) * N;
    for_each_mode(g, [&](const Mode& n, std::size_t) {
        double r2 = 0.0;
        for (int i = 0; i < d; ++i) r2 += static_cast<double>(n[i]) * n[i];
        if (r2 > n2max + 1e-12) return;
        if (!includeZero && r2 == 0.0) return;
        modes.push_back(n);
    });
    return modes;
}

FieldSample sample_gff(const ModelParams& params, int N, std::uint64_t seed) {
    params.validate();
    if (N < 1) throw std::invalid_argument("sample_gff: N must be >= 1");
    GridSpec g = default_grid(params.d, N, params.p, 1.0);
    FieldSample out{SpectralField(g, /*meanZero=*/!params.massive), seed, params, N};
    const auto modes = ball_modes(params.d, N, params.massive);
    for (const Mode& n : modes) {
        CounterRng rng(mode_stream_key(seed, kTagGff, n, params.d));
        const cplx g_n = rng.next_complex_gaussian(0.5);
        out.field.coeffs[out.field.flat_index(n)] = g_n / dispersion_symbol(n, params.s, params.massive);
    }
    return out;
}

BrownianModes sample_brownian(int d, int N, int T, std::uint64_t seed, bool includeZero) {
    if (T < 1) throw std::invalid_argument("sample_brownian: T must be >= 1");
    if (N < 1) throw std::invalid_argument("sample_brownian: N must be >= 1");
    BrownianModes b;
    b.d = d;
    b.N = N;
    b.T = T;
    b.includeZero = includeZero;
    b.seed = seed;
    b.modes = ball_modes(d, N, includeZero);
    b.path.assign(b.modes.size() * static_cast<std::size_t>(T + 1), cplx{0.0, 0.0});
    const double dt = 1.0 / T;
    for (std::size_t m = 0; m < b.modes.size(); ++m) {
        CounterRng rng(mode_stream_key(seed, kTagBrownian, b.modes[m], d));
        cplx acc{0.0, 0.0};
        b.at(m, 0) = acc;
        for (int t = 1; t <= T; ++t) {
            acc += rng.next_complex_gaussian(0.5 * dt);
            b.at(m, t) = acc;
        }
    }
    return b;
}

SpectralField terminal_field(const BrownianModes& b, const ModelParams& params, int N) {
    params.validate();
    if (N > b.N) throw std::invalid_argument("terminal_field: Brownian paths do not cover |n| <= N");
    if (params.massive && !b.includeZero)
        throw std::invalid_argument("terminal_field: massive field needs the n = 0 path");
    GridSpec g = default_grid(params.d, N, params.p, 1.0);
    SpectralField f(g, /*meanZero=*/!params.massive);
    const double n2max = static_cast<double>(N) * N;
    for (std::size_t m = 0; m < b.modes.size(); ++m) {
        const Mode& n = b.modes[m];
        double r2 = 0.0;
        for (int i = 0; i < b.d; ++i) r2 += static_cast<double>(n[i]) * n[i];
        if (r2 > n2max + 1e-12) continue;
        f.coeffs[f.flat_index(n)] = b.at(m, b.T) / dispersion_symbol(n, params.s, params.massive);
    }
    return f;
}

}  // namespace gibbslab
