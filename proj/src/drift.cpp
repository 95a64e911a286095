#include "gibbslab/drift.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gibbslab/csv.hpp"

#include "gibbslab/rng.hpp"
#include "gibbslab/stats.hpp"

namespace gibbslab {

SpectralField ZetaPath::terminal(double p) const {
    GridSpec g = default_grid(d, N, p, 1.0);
    SpectralField f(g, /*meanZero=*/!massive);
    for (std::size_t m = 0; m < modes.size(); ++m) f.coeffs[f.flat_index(modes[m])] = at(m, T);
    return f;
}

ZetaPath zeta_evolve(const BrownianModes& b, const ModelParams& params, int N) {
    params.validate();
    if (N > b.N) throw std::invalid_argument("zeta_evolve: Brownian paths do not cover |n| <= N");
    if (params.massive && !b.includeZero)
        throw std::invalid_argument("zeta_evolve: massive field needs the n = 0 path");
    ZetaPath z;
    z.d = params.d;
    z.N = N;
    z.T = b.T;
    z.s = params.s;
    z.massive = params.massive;
    const double n2max = static_cast<double>(N) * N;
    for (const Mode& n : b.modes) {
        double r2 = 0.0;
        for (int i = 0; i < b.d; ++i) r2 += static_cast<double>(n[i]) * n[i];
        if (r2 <= n2max + 1e-12) z.modes.push_back(n);
    }
    z.relaxRate.resize(z.modes.size());
    z.path.assign(z.modes.size() * static_cast<std::size_t>(b.T + 1), cplx{0.0, 0.0});
    const double rateScale = std::pow(static_cast<double>(N), 0.5 * params.d);
    const double dt = 1.0 / b.T;
    std::size_t src = 0;
    for (std::size_t m = 0; m < z.modes.size(); ++m) {
        const Mode& n = z.modes[m];
        while (b.modes[src] != n) ++src;  // same enumeration order, subset
        const double sym = dispersion_symbol(n, params.s, params.massive);
        const double lambda = rateScale / sym;
        z.relaxRate[m] = lambda;
        const double decay = std::exp(-lambda * dt);
        cplx zeta{0.0, 0.0};
        z.at(m, 0) = zeta;
        for (int t = 0; t < b.T; ++t) {
            const cplx forcing = b.at(src, t) / sym;  // left endpoint of Y^(t,n)
            zeta = decay * zeta + (1.0 - decay) * forcing;
            z.at(m, t + 1) = zeta;
        }
    }
    return z;
}

double zeta_kinetic_cost(const ZetaPath& z, double s) {
    if (z.T < 1) throw std::invalid_argument("zeta_kinetic_cost: path needs >= 2 time points");
    const double dt = 1.0 / z.T;
    double acc = 0.0;
    for (std::size_t m = 0; m < z.modes.size(); ++m) {
        const double w = std::pow(dispersion_symbol(z.modes[m], s, z.massive), 2.0);
        double sum = 0.0;
        for (int t = 0; t < z.T; ++t) sum += std::norm(z.at(m, t + 1) - z.at(m, t));
        acc += w * sum / dt;  // sum ||dz/dt||^2 dt = sum |dz|^2 / dt
    }
    return acc;
}

DriftProfile build_FN(const Profile& f, int N, double p, double classATol) {
    if (N < 1) throw std::invalid_argument("build_FN: N must be >= 1");
    const ClassAReport rep = validate_class_a(f, classATol);
    if (!rep.ok)
        throw std::invalid_argument("build_FN: profile violates the admissible class (l2Err=" +
                                    format_double(rep.l2Err) + ", dc=" + format_double(rep.dcAbs) +
                                    ", tail=" + format_double(rep.tailFrac) + ")");
    DriftProfile out;
    out.FN = periodize_rescale_profile(f, 1.0 / N, N, p);
    out.FN.meanZero = true;
    out.FN.coeffs[out.FN.flat_index(Mode{0, 0, 0})] = cplx{0.0, 0.0};
    out.sourceProfile = f.name;
    return out;
}

double beta_max(const ModelParams& params) {
    return std::min(0.5 * params.s - 0.25 * params.d, 0.25 * params.d);
}

double beta_default(const ModelParams& params) { return 0.5 * beta_max(params); }

namespace {

struct SampleStats {
    double b1 = 0.0, b2 = 0.0, b3 = 0.0;
    double accepted = 0.0;
    double kinetic = 0.0;
    double mismatch = 0.0;
    double crossL2 = 0.0;  // Re <F_N, Y - zeta>_{L^2}
};

// One Monte Carlo path of the shifted field and its error terms. All
// randomness comes from streams keyed by (seed, sample, mode), so different
// cutoffs N reuse the same low-mode noise (common random numbers).
SampleStats one_sample(const ModelParams& params, int N, const SpectralField& FN, double alpha,
                       double fnLpP, int T, std::uint64_t seed, std::size_t sampleIdx,
                       const std::vector<Mode>& modes) {
    const double dt = 1.0 / T;
    const double rateScale = std::pow(static_cast<double>(N), 0.5 * params.d);
    const std::uint64_t sampleKey = hash_combine(hash_combine(seed, kTagLowerBound), sampleIdx);

    SpectralField V = FN;  // accumulates Y_N - zeta_N(1) + alpha F_N
    scale_inplace(V, cplx{alpha, 0.0});
    V.meanZero = !params.massive;

    double kinetic = 0.0;
    double mismatch = 0.0;
    double crossHs = 0.0;  // Re <zeta(1), F_N>_{H^s}
    double crossL2 = 0.0;
    for (const Mode& n : modes) {
        CounterRng rng(mode_stream_key(sampleKey, kTagBrownian, n, params.d));
        const double sym = dispersion_symbol(n, params.s, params.massive);
        const double lambda = rateScale / sym;
        const double decay = std::exp(-lambda * dt);
        const double w = sym * sym;  // H^s weight of this mode
        cplx B{0.0, 0.0};
        cplx zeta{0.0, 0.0};
        double kin = 0.0;
        for (int t = 0; t < T; ++t) {
            const cplx forcing = B / sym;
            const cplx zNew = decay * zeta + (1.0 - decay) * forcing;
            kin += std::norm(zNew - zeta);
            zeta = zNew;
            B += rng.next_complex_gaussian(0.5 * dt);
        }
        kinetic += w * kin / dt;
        const cplx y = B / sym;
        const cplx e = y - zeta;  // tracking error of this mode at t = 1
        mismatch += std::norm(e);
        const cplx fhat = FN.coeffs[FN.flat_index(n)];
        crossHs += w * (zeta * std::conj(fhat)).real();
        crossL2 += (std::conj(fhat) * e).real();
        V.coeffs[V.flat_index(n)] += e;
    }

    const double l2V = l2_norm(V);
    const bool accepted = l2V <= params.K;
    SampleStats st;
    st.accepted = accepted ? 1.0 : 0.0;
    st.kinetic = kinetic;
    st.mismatch = mismatch;
    st.crossL2 = crossL2;
    if (accepted) {
        const double lpVp = std::pow(lp_norm(V, params.p), params.p);
        st.b1 = -(std::pow(alpha, params.p) * fnLpP - lpVp) / params.p;
        st.b2 = 0.0;
    } else {
        st.b1 = 0.0;
        st.b2 = -std::pow(alpha, params.p) / params.p * fnLpP;
    }
    st.b3 = -0.5 * kinetic + alpha * crossHs;
    return st;
}

}  // namespace

LowerBoundReport lower_bound_core(const ModelParams& params, int N, const Profile& profile,
                                  double alpha, int nsamples, std::uint64_t seed, int T,
                                  int threads) {
    params.validate();
    if (nsamples < 1) throw std::invalid_argument("lower_bound: nsamples must be >= 1");
    if (!(alpha > 0.0) || !(alpha < params.K))
        throw std::invalid_argument("lower_bound: shift size must satisfy 0 < alpha < K");
    if (T < 2) throw std::invalid_argument("lower_bound: T must be >= 2");

    const DriftProfile dp = build_FN(profile, N, params.p);
    const SpectralField& FN = dp.FN;
    const double fnLpP = std::pow(lp_norm(FN, params.p), params.p);
    const double fnHs2 = params.massive ? std::pow(sobolev_norm_massive(FN, params.s), 2.0)
                                        : std::pow(sobolev_norm(FN, params.s), 2.0);
    const double fnL2 = l2_norm(FN);
    const auto modes = ball_modes(params.d, N, params.massive);

    std::vector<SampleStats> stats(static_cast<std::size_t>(nsamples));
    auto evalOne = [&](std::size_t i) -> double {
        stats[i] = one_sample(params, N, FN, alpha, fnLpP, T, seed, i, modes);
        return 0.0;
    };
    parallel_map(static_cast<std::size_t>(nsamples), threads, evalOne);

    auto collect = [&](auto proj) {
        std::vector<double> v(stats.size());
        for (std::size_t i = 0; i < stats.size(); ++i) v[i] = proj(stats[i]);
        return v;
    };
    const auto b1 = mean_stderr(collect([](const SampleStats& s) { return s.b1; }));
    const auto b2 = mean_stderr(collect([](const SampleStats& s) { return s.b2; }));
    const auto b3 = mean_stderr(collect([](const SampleStats& s) { return s.b3; }));
    const auto tot = mean_stderr(collect([](const SampleStats& s) { return s.b1 + s.b2 + s.b3; }));
    const auto acc = mean_stderr(collect([](const SampleStats& s) { return s.accepted; }));
    const auto kin = mean_stderr(collect([](const SampleStats& s) { return s.kinetic; }));
    const auto mis = mean_stderr(collect([](const SampleStats& s) { return s.mismatch; }));

    LowerBoundReport rep;
    rep.N = N;
    rep.alpha = alpha;
    rep.beta = std::numeric_limits<double>::quiet_NaN();
    rep.mainTerm = std::pow(alpha, params.p) / params.p * fnLpP - 0.5 * alpha * alpha * fnHs2;
    rep.B1 = {b1.mean, b1.stderr_};
    rep.B2 = {b2.mean, b2.stderr_};
    rep.B3 = {b3.mean, b3.stderr_};
    rep.total = rep.mainTerm + tot.mean;
    rep.totalStderr = tot.stderr_;
    rep.samples = nsamples;
    rep.acceptFrac = acc.mean;
    rep.FNLpP = fnLpP;
    rep.FNHs2 = fnHs2;
    rep.FNL2 = fnL2;
    rep.kineticMean = kin.mean;
    rep.mismatchL2Mean = mis.mean;
    return rep;
}

LowerBoundReport lower_bound_estimate(const ModelParams& params, int N, const Profile& profile,
                                      double beta, int nsamples, std::uint64_t seed, int T,
                                      int threads) {
    const double bmax = beta_max(params);
    if (!(beta > 0.0) || !(beta < bmax))
        throw std::invalid_argument("lower_bound_estimate: beta outside (0, " +
                                    format_double(bmax) + ")");
    const double alpha = params.K - std::pow(static_cast<double>(N), -beta);
    if (!(alpha > 0.0))
        throw std::invalid_argument("lower_bound_estimate: K - N^{-beta} is not positive");
    LowerBoundReport rep = lower_bound_core(params, N, profile, alpha, nsamples, seed, T, threads);
    rep.beta = beta;
    return rep;
}

CutoffPilot measure_cutoff_pilot(const ModelParams& params, int N, const Profile& profile,
                                 int nsamples, std::uint64_t seed, int T, int threads) {
    // Pilot pass: only the cutoff statistics are needed; the profile terms of
    // one_sample are ignored.
    const DriftProfile dp = build_FN(profile, N, params.p);
    const SpectralField& FN = dp.FN;
    const auto modes = ball_modes(params.d, N, params.massive);

    CutoffPilot pilot;
    pilot.R.resize(static_cast<std::size_t>(nsamples));
    pilot.X.resize(static_cast<std::size_t>(nsamples));
    auto evalOne = [&](std::size_t i) -> double {
        const SampleStats st = one_sample(params, N, FN, 0.5 * params.K, 1.0, T, seed, i, modes);
        pilot.R[i] = st.mismatch;
        pilot.X[i] = st.crossL2;
        return 0.0;
    };
    parallel_map(static_cast<std::size_t>(nsamples), threads, evalOne);
    pilot.fnL2 = l2_norm(FN);
    return pilot;
}

double calibrated_alpha(const CutoffPilot& pilot, double K, double targetViolFrac) {
    const std::size_t n = pilot.R.size();
    if (n == 0) throw std::invalid_argument("calibrated_alpha: empty pilot");
    const std::size_t allowed =
        static_cast<std::size_t>(std::max(1.0, std::floor(targetViolFrac * static_cast<double>(n))));
    auto violations = [&](double a) {
        const double budget = K * K - a * a * pilot.fnL2 * pilot.fnL2;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (2.0 * a * pilot.X[i] + pilot.R[i] > budget) ++count;
        return count;
    };
    double lo = 1e-6 * K, hi = K * (1.0 - 1e-9);
    if (violations(lo) > allowed) return lo;  // noise swamps the ball; bound will be weak
    if (violations(hi) <= allowed) return hi;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (violations(mid) <= allowed ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace gibbslab
