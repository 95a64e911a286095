// field.hpp
// Band-limited spectral fields on the torus / periodized box, with exact
// norm evaluation, sharp-ball projectors and Riesz potentials.
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "gibbslab/grid.hpp"

namespace gibbslab {

using Mode = std::array<int, 3>;  // frequency vector; components beyond d are 0

// Fields are complex-valued throughout; a real-valued (Hermitian-symmetric)
// variant would halve the storage and is left as an extension.
struct SpectralField {
    GridSpec grid;
    std::vector<cplx> coeffs;  // dense cube side (2N+1)^d, index offset +N per axis
    bool meanZero = true;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g, bool meanZero_ = true)
        : grid(g), coeffs(g.coeff_count(), cplx{0.0, 0.0}), meanZero(meanZero_) {
        grid.validate();
    }

    std::size_t flat_index(const Mode& n) const {
        const int side = grid.side();
        std::size_t idx = 0;
        for (int i = 0; i < grid.d; ++i) idx = idx * static_cast<std::size_t>(side) +
                                               static_cast<std::size_t>(n[i] + grid.N);
        return idx;
    }
    cplx at(const Mode& n) const { return coeffs[flat_index(n)]; }
    void set(const Mode& n, cplx v);  // rejects |n| > N; enforces meanZero at n = 0

    double mode_norm2(const Mode& n) const {
        double r = 0.0;
        for (int i = 0; i < grid.d; ++i) r += static_cast<double>(n[i]) * n[i];
        return r;
    }
};

// Visit every lattice mode of the coefficient cube (ball membership is the
// caller's concern; coefficients outside the ball are identically zero).
void for_each_mode(const GridSpec& g, const std::function<void(const Mode&, std::size_t)>& fn);

// Physical samples of sum_n f^(n) e^{2 pi i n.x/L} on the uniform M^d grid.
std::vector<cplx> to_physical(const SpectralField& f);

// Inverse of to_physical: forward DFT / M^d, restricted to |n| <= N.
SpectralField to_spectral(const std::vector<cplx>& samples, const GridSpec& g);

// Sharp Euclidean-ball truncation: zero every coefficient with |n| > cutoff.
SpectralField project_freq(const SpectralField& f, double cutoff);

// Multiply coefficient at n by (2 pi |n| / L)^order; n = 0 stays zero.
// Throws std::domain_error for negative order on a field with a nonzero mean.
SpectralField riesz_apply(const SpectralField& f, double order);

// ( sum_n (2 pi |n|/L)^{2s} |f^(n)|^2 L^d )^{1/2}; exact, no quadrature.
double sobolev_norm(const SpectralField& f, double s);

// Massive counterpart with symbol <n>^s = (1 + 4 pi^2 |n|^2)^{s/2}.
double sobolev_norm_massive(const SpectralField& f, double s);

// L^2 norm from coefficients (Plancherel route).
double l2_norm(const SpectralField& f);

// Uniform-grid quadrature of ( L^d/M^d sum |u(x_k)|^p )^{1/p}.
double lp_norm(const SpectralField& f, double p);
double lp_norm_physical(const std::vector<cplx>& samples, const GridSpec& g, double p);

// Zero all coefficients with physical frequency |n/L| > radius (radius 1 is
// the unit-ball multiplier used on R^d-approximating boxes).
SpectralField ball_multiplier(const SpectralField& f, double radius = 1.0);

// Real part of the homogeneous H^s pairing sum (2 pi |n|/L)^{2s} f^(n) conj(g^(n)) L^d.
double hs_inner(const SpectralField& f, const SpectralField& g, double s);

// Field arithmetic on a shared grid.
SpectralField axpy(cplx a, const SpectralField& x, const SpectralField& y);  // a*x + y
void scale_inplace(SpectralField& f, cplx a);

// Largest |u| on the grid boundary relative to max |u|; used to warn when a
// box is too small for the profile it carries.
double boundary_decay_ratio(const std::vector<cplx>& samples, const GridSpec& g);

}  // namespace gibbslab
