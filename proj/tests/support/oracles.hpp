// oracles.hpp
// Independent reference computations used only by tests: an ODE shooting
// solver for the 1-d ground state, deterministic quadratures, and the exact
// second-moment formulas for the mode-wise tracking error.
#pragma once

#include <functional>

namespace gibbslab::oracle {

struct ShootingResult {
    double amplitude = 0.0;  // Q(0)
    double massSq = 0.0;     // integral of Q^2 over R
    double lpP = 0.0;        // integral of Q^p
    double gradSq = 0.0;     // integral of (Q')^2
};

// Decaying solution of Q'' = Q - Q^{p-1} on [0, inf), found by bisection on
// Q(0) and integrated by RK4; all integrals use the even extension.
ShootingResult shoot_ground_state_1d(double p);

// Simpson quadrature on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, int intervals);

// Deterministic tensor-grid quadrature of the two-mode truncated partition
// function at N = 1, d = 1, s = 1, p = 6 (4 real Gaussian coordinates).
double quad_logZ_N1_p6(double K, int pointsPerAxis = 96);

// Exact continuum second moments of the tracking error for d = s = 1:
// E ||zeta_N(1) - Y_N||_{L^2}^2 and E int_0^1 ||d/dt zeta_N||_{H^1}^2 dt.
double exact_mismatch_l2sq(int N);
double exact_kinetic_cost(int N);

}  // namespace gibbslab::oracle
