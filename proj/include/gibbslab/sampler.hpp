// sampler.hpp
// Draws of the truncated fractional Gaussian free field and of the complex
// Brownian mode paths that drive the drift construction. Every draw is a
// pure function of (seed, mode), so samples are reproducible under any
// parallel schedule and nested across cutoffs.
#pragma once

#include <cstdint>
#include <vector>

#include "gibbslab/field.hpp"
#include "gibbslab/grid.hpp"

namespace gibbslab {

// Stream tags keeping the independent randomness sources apart.
inline constexpr std::uint64_t kTagGff = 0x67666600ull;       // direct field draws
inline constexpr std::uint64_t kTagBrownian = 0x62726f00ull;  // Brownian mode paths

// Dispersion symbol: (2 pi |n|)^s on the unit torus for the massless field,
// <n>^s = (1 + 4 pi^2 |n|^2)^{s/2} for the massive one (which keeps n = 0).
double dispersion_symbol(const Mode& n, double s, bool massive);

struct FieldSample {
    SpectralField field;
    std::uint64_t seed = 0;
    ModelParams params;
    int N = 0;
};

// Law: coefficients g_n / symbol(n) over 0 < |n| <= N (plus n = 0 when
// massive), with Re g_n, Im g_n independent N(0, 1/2).
FieldSample sample_gff(const ModelParams& params, int N, std::uint64_t seed);

struct BrownianModes {
    int d = 1;
    int N = 0;
    int T = 0;
    bool includeZero = false;  // massive fields carry the n = 0 mode
    std::uint64_t seed = 0;
    std::vector<Mode> modes;   // deterministic lexicographic enumeration of the ball
    std::vector<cplx> path;    // (T+1) points per mode, mode-major

    cplx at(std::size_t modeIdx, int t) const {
        return path[modeIdx * static_cast<std::size_t>(T + 1) + static_cast<std::size_t>(t)];
    }
    cplx& at(std::size_t modeIdx, int t) {
        return path[modeIdx * static_cast<std::size_t>(T + 1) + static_cast<std::size_t>(t)];
    }
};

// Lexicographic modes of the ball |n| <= N, excluding 0 unless includeZero.
std::vector<Mode> ball_modes(int d, int N, bool includeZero);

// Per-mode complex Brownian paths on the uniform grid {0, 1/T, ..., 1} with
// Var(B_n(t)) = t (components of variance t/2 each).
BrownianModes sample_brownian(int d, int N, int T, std::uint64_t seed, bool includeZero = false);

// Field with coefficients B_n(1)/symbol(n); same law as sample_gff.
SpectralField terminal_field(const BrownianModes& b, const ModelParams& params, int N);

}  // namespace gibbslab
