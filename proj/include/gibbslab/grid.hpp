// grid.hpp
// Grid geometry and model parameters shared by every module.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "gibbslab/fft.hpp"

namespace gibbslab {

// Band-limited representation on the d-torus of side L (L = 1 for the unit
// torus; larger L approximates R^d). Frequencies are integer vectors n with
// Euclidean norm |n| <= N; physical frequencies are n/L.
struct GridSpec {
    int d = 1;       // dimension, 1..3
    int N = 0;       // frequency cutoff (Euclidean ball)
    int M = 0;       // grid points per axis
    double L = 1.0;  // side length

    void validate() const {
        if (d < 1 || d > 3) throw std::invalid_argument("GridSpec: d must be 1..3");
        if (N < 0) throw std::invalid_argument("GridSpec: N must be >= 0");
        if (M < 2 * N + 2)
            throw std::invalid_argument("GridSpec: M must be >= 2N+2 (got M=" + std::to_string(M) +
                                        ", N=" + std::to_string(N) + ")");
        if (!is_power_of_two(M)) throw std::invalid_argument("GridSpec: M must be a power of two");
        if (!(L > 0.0)) throw std::invalid_argument("GridSpec: L must be positive");
    }

    int side() const { return 2 * N + 1; }  // coefficient cube side
    std::size_t coeff_count() const {
        std::size_t c = 1;
        for (int i = 0; i < d; ++i) c *= static_cast<std::size_t>(side());
        return c;
    }
    std::size_t grid_count() const {
        std::size_t c = 1;
        for (int i = 0; i < d; ++i) c *= static_cast<std::size_t>(M);
        return c;
    }
    double cell_volume() const { return std::pow(L / M, d); }
    double volume() const { return std::pow(L, d); }

    bool operator==(const GridSpec&) const = default;
};

// Smallest power-of-two M making |u|^p of a band-limited field
// quadrature-exact for even integer p (and spectrally accurate otherwise).
inline GridSpec default_grid(int d, int N, double p, double L = 1.0) {
    const int need = std::max(2 * N + 2, static_cast<int>(std::ceil(p)) * N + 2);
    GridSpec g{d, N, next_power_of_two(need), L};
    g.validate();
    return g;
}

enum class Criticality { Subcritical, Critical, Supercritical };

inline const char* to_string(Criticality c) {
    switch (c) {
        case Criticality::Subcritical: return "subcritical";
        case Criticality::Critical: return "critical";
        default: return "supercritical";
    }
}

// One Gibbs-measure problem: base field mu_{d,s} (massless) or its massive
// variant, interaction exponent p, L^2-cutoff K.
struct ModelParams {
    int d = 1;
    double s = 1.0;
    double p = 6.0;
    double K = 1.0;
    bool massive = false;

    void validate() const {
        if (d < 1 || d > 3) throw std::invalid_argument("ModelParams: d must be 1..3");
        if (!(s > 0.5 * d))
            throw std::invalid_argument("ModelParams: require s > d/2 (no renormalization regime)");
        if (!(p > 2.0)) throw std::invalid_argument("ModelParams: require p > 2");
        if (!(K > 0.0)) throw std::invalid_argument("ModelParams: require K > 0");
    }
};

inline double critical_p(int d, double s) { return 4.0 * s / d + 2.0; }

inline Criticality classify(const ModelParams& mp) {
    const double pc = critical_p(mp.d, mp.s);
    if (std::fabs(mp.p - pc) <= 1e-9 * std::max(1.0, pc)) return Criticality::Critical;
    return mp.p < pc ? Criticality::Subcritical : Criticality::Supercritical;
}

// Divergence exponent of log Z_{K,N}: 2s in the critical case, dp/2 - d in
// the supercritical case (the two coincide when p = 4s/d + 2).
inline double divergence_exponent(const ModelParams& mp) {
    if (classify(mp) == Criticality::Critical) return 2.0 * mp.s;
    return mp.d * mp.p / 2.0 - mp.d;
}

}  // namespace gibbslab
