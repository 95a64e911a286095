#include "gibbslab/field.hpp"

#include <cmath>
#include <stdexcept>

#include "gibbslab/fft.hpp"

namespace gibbslab {

void SpectralField::set(const Mode& n, cplx v) {
    for (int i = 0; i < grid.d; ++i)
        if (n[i] < -grid.N || n[i] > grid.N)
            throw std::invalid_argument("SpectralField::set: mode outside cube");
    if (mode_norm2(n) > static_cast<double>(grid.N) * grid.N + 1e-12)
        throw std::invalid_argument("SpectralField::set: mode outside the |n| <= N ball");
    const bool isZeroMode = (n[0] == 0 && n[1] == 0 && n[2] == 0);
    if (isZeroMode && meanZero && std::abs(v) != 0.0)
        throw std::invalid_argument("SpectralField::set: mean-zero field cannot carry n = 0");
    coeffs[flat_index(n)] = v;
}

void for_each_mode(const GridSpec& g, const std::function<void(const Mode&, std::size_t)>& fn) {
    const int side = g.side();
    Mode n{0, 0, 0};
    if (g.d == 1) {
        for (int i = -g.N; i <= g.N; ++i) {
            n[0] = i;
            fn(n, static_cast<std::size_t>(i + g.N));
        }
        return;
    }
    std::size_t idx = 0;
    if (g.d == 2) {
        for (int i = -g.N; i <= g.N; ++i)
            for (int j = -g.N; j <= g.N; ++j) {
                n[0] = i;
                n[1] = j;
                fn(n, idx++);
            }
        return;
    }
    for (int i = -g.N; i <= g.N; ++i)
        for (int j = -g.N; j <= g.N; ++j)
            for (int k = -g.N; k <= g.N; ++k) {
                n[0] = i;
                n[1] = j;
                n[2] = k;
                fn(n, idx++);
            }
    (void)side;
}

std::vector<cplx> to_physical(const SpectralField& f) {
    const GridSpec& g = f.grid;
    g.validate();
    std::vector<cplx> grid(g.grid_count(), cplx{0.0, 0.0});
    const int M = g.M;
    // Scatter coefficients to wrapped DFT bins, then one inverse transform.
    for_each_mode(g, [&](const Mode& n, std::size_t idx) {
        const cplx c = f.coeffs[idx];
        if (c == cplx{0.0, 0.0}) return;
        std::size_t bin = 0;
        for (int i = 0; i < g.d; ++i) {
            const int w = ((n[i] % M) + M) % M;
            bin = bin * static_cast<std::size_t>(M) + static_cast<std::size_t>(w);
        }
        grid[bin] += c;
    });
    fft_nd_inplace(grid, g.d, M, /*inverse=*/true);
    return grid;
}

SpectralField to_spectral(const std::vector<cplx>& samples, const GridSpec& g) {
    g.validate();
    if (samples.size() != g.grid_count())
        throw std::invalid_argument("to_spectral: sample count does not match grid");
    std::vector<cplx> work = samples;
    fft_nd_inplace(work, g.d, g.M, /*inverse=*/false);
    const double scale = 1.0 / static_cast<double>(g.grid_count());
    SpectralField f(g, /*meanZero=*/false);
    const double nmax2 = static_cast<double>(g.N) * g.N;
    for_each_mode(g, [&](const Mode& n, std::size_t idx) {
        if (f.mode_norm2(n) > nmax2 + 1e-12) return;
        std::size_t bin = 0;
        for (int i = 0; i < g.d; ++i) {
            const int w = ((n[i] % g.M) + g.M) % g.M;
            bin = bin * static_cast<std::size_t>(g.M) + static_cast<std::size_t>(w);
        }
        f.coeffs[idx] = work[bin] * scale;
    });
    return f;
}

SpectralField project_freq(const SpectralField& f, double cutoff) {
    if (cutoff < 0.0) throw std::invalid_argument("project_freq: cutoff must be >= 0");
    SpectralField out = f;
    const double c2 = cutoff * cutoff;
    for_each_mode(f.grid, [&](const Mode& n, std::size_t idx) {
        if (f.mode_norm2(n) > c2 * (1.0 + 1e-15)) out.coeffs[idx] = cplx{0.0, 0.0};
    });
    return out;
}

SpectralField riesz_apply(const SpectralField& f, double order) {
    if (order == 0.0) return f;
    const Mode zero{0, 0, 0};
    if (order < 0.0 && std::abs(f.at(zero)) != 0.0)
        throw std::domain_error("riesz_apply: negative order needs a mean-zero field");
    SpectralField out = f;
    for_each_mode(f.grid, [&](const Mode& n, std::size_t idx) {
        const double r2 = f.mode_norm2(n);
        if (r2 == 0.0) {
            out.coeffs[idx] = cplx{0.0, 0.0};
            return;
        }
        out.coeffs[idx] = f.coeffs[idx] * std::pow(2.0 * M_PI * std::sqrt(r2) / f.grid.L, order);
    });
    return out;
}

double sobolev_norm(const SpectralField& f, double s) {
    double acc = 0.0;
    for_each_mode(f.grid, [&](const Mode& n, std::size_t idx) {
        const double a2 = std::norm(f.coeffs[idx]);
        if (a2 == 0.0) return;
        const double r2 = f.mode_norm2(n);
        if (r2 == 0.0) {
            if (s == 0.0) acc += a2;  // |n|^0 = 1 by the s = 0 convention
            return;
        }
        acc += std::pow(4.0 * M_PI * M_PI * r2 / (f.grid.L * f.grid.L), s) * a2;
    });
    return std::sqrt(acc * f.grid.volume());
}

double sobolev_norm_massive(const SpectralField& f, double s) {
    double acc = 0.0;
    for_each_mode(f.grid, [&](const Mode& n, std::size_t idx) {
        const double a2 = std::norm(f.coeffs[idx]);
        if (a2 == 0.0) return;
        const double r2 = f.mode_norm2(n) / (f.grid.L * f.grid.L);
        acc += std::pow(1.0 + 4.0 * M_PI * M_PI * r2, s) * a2;
    });
    return std::sqrt(acc * f.grid.volume());
}

double l2_norm(const SpectralField& f) {
    double acc = 0.0;
    for (const cplx& c : f.coeffs) acc += std::norm(c);
    return std::sqrt(acc * f.grid.volume());
}

double lp_norm_physical(const std::vector<cplx>& samples, const GridSpec& g, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: require p >= 1");
    double acc = 0.0;
    if (p == 2.0) {
        for (const cplx& u : samples) acc += std::norm(u);
    } else {
        for (const cplx& u : samples) acc += std::pow(std::abs(u), p);
    }
    return std::pow(acc * g.cell_volume(), 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) {
    return lp_norm_physical(to_physical(f), f.grid, p);
}

SpectralField ball_multiplier(const SpectralField& f, double radius) {
    if (radius < 0.0) throw std::invalid_argument("ball_multiplier: radius must be >= 0");
    return project_freq(f, radius * f.grid.L);
}

double hs_inner(const SpectralField& f, const SpectralField& g, double s) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("hs_inner: grid mismatch");
    double acc = 0.0;
    for_each_mode(f.grid, [&](const Mode& n, std::size_t idx) {
        const cplx prod = f.coeffs[idx] * std::conj(g.coeffs[idx]);
        if (prod == cplx{0.0, 0.0}) return;
        const double r2 = f.mode_norm2(n);
        if (r2 == 0.0) {
            if (s == 0.0) acc += prod.real();
            return;
        }
        acc += std::pow(4.0 * M_PI * M_PI * r2 / (f.grid.L * f.grid.L), s) * prod.real();
    });
    return acc * f.grid.volume();
}

SpectralField axpy(cplx a, const SpectralField& x, const SpectralField& y) {
    if (!(x.grid == y.grid)) throw std::invalid_argument("axpy: grid mismatch");
    SpectralField out = y;
    out.meanZero = x.meanZero && y.meanZero;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += a * x.coeffs[i];
    return out;
}

void scale_inplace(SpectralField& f, cplx a) {
    for (cplx& c : f.coeffs) c *= a;
}

double boundary_decay_ratio(const std::vector<cplx>& samples, const GridSpec& g) {
    // Boundary = any grid point whose first coordinate is M/2 away from the
    // profile center (grid index 0 corresponds to x = 0; profiles are
    // centered there after wrapping).
    double vmax = 0.0;
    for (const cplx& u : samples) vmax = std::max(vmax, std::abs(u));
    if (vmax == 0.0) return 0.0;
    const int M = g.M;
    double bmax = 0.0;
    const int half = M / 2;
    if (g.d == 1) {
        bmax = std::abs(samples[static_cast<std::size_t>(half)]);
    } else {
        // scan the hyperplane x_0 = L/2
        std::size_t planeSize = g.grid_count() / static_cast<std::size_t>(M);
        for (std::size_t r = 0; r < planeSize; ++r)
            bmax = std::max(bmax, std::abs(samples[static_cast<std::size_t>(half) * planeSize + r]));
    }
    return bmax / vmax;
}

}  // namespace gibbslab
