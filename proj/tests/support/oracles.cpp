#include "support/oracles.hpp"

#include <cmath>
#include <vector>

namespace gibbslab::oracle {

namespace {

struct State {
    double q;
    double dq;
};

State rk4_step(const State& y, double h, double p) {
    auto f = [p](const State& s) { return State{s.dq, s.q - std::pow(s.q, p - 1.0)}; };
    const State k1 = f(y);
    const State k2 = f({y.q + 0.5 * h * k1.q, y.dq + 0.5 * h * k1.dq});
    const State k3 = f({y.q + 0.5 * h * k2.q, y.dq + 0.5 * h * k2.dq});
    const State k4 = f({y.q + h * k3.q, y.dq + h * k3.dq});
    return {y.q + h / 6.0 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q),
            y.dq + h / 6.0 * (k1.dq + 2 * k2.dq + 2 * k3.dq + k4.dq)};
}

// +1: turned back upward (amplitude too small); -1: crossed zero (too
// large); 0: still descending at xMax.
int classify_shot(double a, double p, double h, double xMax) {
    State y{a, 0.0};
    for (double x = 0.0; x < xMax; x += h) {
        y = rk4_step(y, h, p);
        if (y.q <= 0.0) return -1;
        if (y.dq >= 0.0 && y.q < a - 1e-9) return +1;
    }
    return 0;
}

}  // namespace

ShootingResult shoot_ground_state_1d(double p) {
    const double h = 1.0 / 1024.0;
    const double xMax = 40.0;
    // zero-energy amplitude solves a^2/2 = a^p/p, bracket around it
    double lo = 1.01;
    double hi = std::pow(0.5 * p, 1.0 / (p - 2.0)) * 1.5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const int c = classify_shot(mid, p, h, xMax);
        if (c >= 0)
            lo = mid;  // turned upward or undecided: increase amplitude
        else
            hi = mid;
    }
    const double a = 0.5 * (lo + hi);
    ShootingResult res;
    res.amplitude = a;
    State y{a, 0.0};
    double m2 = 0.0, lp = 0.0, g2 = 0.0;
    double prevM = a * a, prevL = std::pow(a, p), prevG = 0.0;
    for (double x = 0.0; x < xMax; x += h) {
        y = rk4_step(y, h, p);
        if (y.q <= 1e-9 || y.dq > 0.0) break;  // shot diverges past machine bracket
        const double curM = y.q * y.q;
        const double curL = std::pow(y.q, p);
        const double curG = y.dq * y.dq;
        m2 += 0.5 * h * (prevM + curM);
        lp += 0.5 * h * (prevL + curL);
        g2 += 0.5 * h * (prevG + curG);
        prevM = curM;
        prevL = curL;
        prevG = curG;
    }
    res.massSq = 2.0 * m2;  // even extension
    res.lpP = 2.0 * lp;
    res.gradSq = 2.0 * g2;
    return res;
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

double quad_logZ_N1_p6(double K, int pointsPerAxis) {
    // Two active modes u^(+1) = x1 + i x2, u^(-1) = x3 + i x4 with
    // components N(0, sigma^2), sigma^2 = (1/2)(2 pi)^{-2}. The interaction
    // integrates in closed form: int |u|^6 = a^3 + (3/2) a b^2 with
    // a = |u^(+1)|^2 + |u^(-1)|^2, b = 2 |u^(+1)| |u^(-1)|.
    const double sigma = std::sqrt(0.5) / (2.0 * M_PI);
    const double R = 8.0 * sigma;
    const int n = pointsPerAxis;
    const double hstep = 2.0 * R / n;
    const double K2 = K * K;

    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        x[i] = -R + (i + 0.5) * hstep;  // midpoint rule
        w[i] = std::exp(-x[i] * x[i] / (2.0 * sigma * sigma)) /
               (sigma * std::sqrt(2.0 * M_PI)) * hstep;
    }
    double Z = 0.0;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
            const double rp2 = x[i1] * x[i1] + x[i2] * x[i2];
            const double w12 = w[i1] * w[i2];
            for (int i3 = 0; i3 < n; ++i3)
                for (int i4 = 0; i4 < n; ++i4) {
                    const double rm2 = x[i3] * x[i3] + x[i4] * x[i4];
                    const double a = rp2 + rm2;
                    if (a > K2) continue;
                    const double b2 = 4.0 * rp2 * rm2;
                    Z += w12 * w[i3] * w[i4] * std::exp((a * a * a + 1.5 * a * b2) / 6.0);
                }
        }
    return std::log(Z);
}

namespace {
double relax_ratio(double lambda) { return (1.0 - std::exp(-2.0 * lambda)) / (2.0 * lambda); }
}  // namespace

double exact_mismatch_l2sq(int N) {
    double acc = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double lambda = std::sqrt(static_cast<double>(N)) / (2.0 * M_PI * n);
        const double s2 = 1.0 / std::pow(2.0 * M_PI * n, 2.0);
        acc += 2.0 * s2 * relax_ratio(lambda);
    }
    return acc;
}

double exact_kinetic_cost(int N) {
    double acc = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double lambda = std::sqrt(static_cast<double>(N)) / (2.0 * M_PI * n);
        acc += 2.0 * 0.5 * lambda * (1.0 - relax_ratio(lambda));
    }
    return acc;
}

}  // namespace gibbslab::oracle
