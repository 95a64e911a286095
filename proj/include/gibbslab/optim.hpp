// optim.hpp
// The three variational constants and their optimizers: the sharp
// Gagliardo-Nirenberg-Sobolev ground state Q (Weinstein-quotient descent),
// the constrained energy supremum C_K on a periodized box and its finite-N
// torus analogue C_{K,N}, and the optimal Bernstein constant C_B.
#pragma once

#include <cstdint>
#include <optional>

#include "gibbslab/field.hpp"
#include "gibbslab/grid.hpp"

namespace gibbslab {

struct OptimOptions {
    double tol = 1e-8;          // projected-gradient norm at exit
    int maxIter = 20000;
    int multistarts = 8;
    std::uint64_t seed = 777;
    double objStallRel = 1e-10; // relative objective change ...
    int objStallIters = 10;     // ... over this many iterations
    std::optional<SpectralField> warmStart;
};

struct OptimResult {
    SpectralField field;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double gradNorm = 0.0;
    int bestStart = -1;
};

struct GroundState {
    SpectralField Q;       // real, positive, radial up to tolerance
    double massQ = 0.0;    // ||Q||_{L^2}
    double cGNS = 0.0;     // (p/2) massQ^{2-p}
    double residual = 0.0; // relative defect of a D^{2s}Q + b Q - |Q|^{p-2} Q = 0
    OptimResult opt;
};

// Box with integer side L whose frequency grid k/L resolves the unit ball.
GridSpec box_grid_for_ball(int d, int L, double p);

// Minimize the scale-invariant quotient
//   J(u) = ||u||_{Hs}^{(p-2)d/2s} ||u||_2^{2+(p-2)(2s-d)/2s} / ||u||_p^p
// by projected descent with per-step positivity, then rescale the minimizer
// so that ||Q||_2 = ||Q||_{Hs} and ||Q||_{Hs}^2 = (2/p) ||Q||_p^p.
GroundState gns_ground_state(int d, double s, double p, const GridSpec& box,
                             const OptimOptions& opts = {});

// sup { K^p/p ||u||_p^p - K^2/2 ||u||_{Hs}^2 : ||u||_2 = 1, u = Pu } on the
// box (P = unit-ball multiplier). The zero frequency is excluded from the
// feasible set; see the module notes.
OptimResult ck_supremum(const ModelParams& params, const GridSpec& box,
                        const OptimOptions& opts = {});

// Finite-N torus analogue on the compact sphere of mean-zero band-limited
// fields (2 #{0<|n|<=N} real dimensions).
OptimResult ckn_torus_supremum(const ModelParams& params, int N, const OptimOptions& opts = {});

// sup { ||u||_p^p : ||u||_2 = 1, u = Pu } on the box; the attained value is
// the sharp constant of ||Pf||_p^p <= C_B ||f||_2^p.
OptimResult cb_bernstein(int d, double p, const GridSpec& box, const OptimOptions& opts = {});

// (1/2) ||u||_{Hs}^2 - (1/p) ||u||_p^p.
double hamiltonian_eval(const SpectralField& u, double s, double p);

// Weinstein quotient itself (used by certificates and tests).
double weinstein_quotient(const SpectralField& u, double s, double p);

// Random band-limited field: iid complex Gaussian coefficients on |n| <= radius.
SpectralField random_ball_field(const GridSpec& g, double radius, std::uint64_t seed,
                                bool meanZero = true);

// Analytic L^2 gradient of the constrained energy (used by the ascent and by
// the finite-difference check): K^p |u|^{p-2} u - K^2 D^{2s} u.
SpectralField ck_energy_gradient(const ModelParams& params, const SpectralField& u);
double ck_energy(const ModelParams& params, const SpectralField& u);

}  // namespace gibbslab
