#include "gibbslab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gibbslab/rng.hpp"
#include "gibbslab/sampler.hpp"
#include "gibbslab/stats.hpp"

namespace gibbslab {

const char* to_string(Method m) {
    switch (m) {
        case Method::DirectMc: return "direct-mc";
        case Method::DriftLower: return "drift-lower";
        default: return "ckn-upper";
    }
}

namespace {

double unit_ball_volume(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return M_PI;
        default: return 4.0 * M_PI / 3.0;
    }
}

}  // namespace

int direct_mc_nmax(const ModelParams& params, double logCap) {
    params.validate();
    // crude Bernstein constant: ||u||_inf^2 <= #modes ||u||_2^2 with
    // #modes ~ vol(B_d) N^d, giving ||u||_p^p <= (vol N^d)^{(p-2)/2} K^p.
    const double e = params.d * params.p / 2.0 - params.d;
    for (int N = 1;; ++N) {
        const double scale = std::pow(unit_ball_volume(params.d), 0.5 * (params.p - 2.0)) *
                             std::pow(params.K, params.p) * std::pow(static_cast<double>(N), e) /
                             params.p;
        if (scale >= logCap) return N - 1;
        if (N > 100000) return N;
    }
}

PartitionEstimate direct_mc_logZ(const ModelParams& params, int N, int nsamples,
                                 std::uint64_t seed, int threads) {
    params.validate();
    if (N < 1 || nsamples < 1) throw std::invalid_argument("direct_mc_logZ: need N >= 1, nsamples >= 1");
    const int nmax = direct_mc_nmax(params);
    if (N > nmax)
        throw std::invalid_argument("direct_mc_logZ: integrand scale overflows at N=" +
                                    std::to_string(N) + " (guard N <= " + std::to_string(nmax) +
                                    "); use the drift-lower method instead");

    std::vector<double> w(static_cast<std::size_t>(nsamples));
    std::vector<double> acc(static_cast<std::size_t>(nsamples));
    parallel_map(static_cast<std::size_t>(nsamples), threads, [&](std::size_t i) -> double {
        const std::uint64_t sk = hash_combine(hash_combine(seed, kTagDirectMc), i);
        const FieldSample fs = sample_gff(params, N, sk);
        const double l2 = l2_norm(fs.field);
        if (l2 <= params.K) {
            const double lpp = std::pow(lp_norm(fs.field, params.p), params.p);
            w[i] = std::exp(lpp / params.p);
            acc[i] = 1.0;
        } else {
            w[i] = 0.0;
            acc[i] = 0.0;
        }
        return 0.0;
    });
    const auto ms = mean_stderr(w);
    const auto af = mean_stderr(acc);
    PartitionEstimate est;
    est.N = N;
    est.method = Method::DirectMc;
    est.params = params;
    est.nsamples = nsamples;
    est.acceptFrac = af.mean;
    if (ms.mean <= 0.0) {
        est.value = -std::numeric_limits<double>::infinity();
        est.stderr_ = std::numeric_limits<double>::infinity();
        est.heavyTail = true;
        return est;
    }
    est.value = std::log(ms.mean);
    est.stderr_ = ms.stderr_ / ms.mean;  // delta method for log of the mean
    est.cv = ms.stderr_ * std::sqrt(static_cast<double>(nsamples)) / ms.mean;
    est.heavyTail = est.cv >= 10.0;
    return est;
}

DriftLowerResult drift_lower_logZ(const ModelParams& params, int N, const Profile& profile,
                                  int nsamples, std::uint64_t seed, const DriftLowerOptions& opts) {
    params.validate();
    if (classify(params) == Criticality::Subcritical)
        throw std::invalid_argument("drift_lower_logZ: needs the critical or supercritical regime");
    const ClassAReport rep = validate_class_a(profile);
    if (!rep.ok) throw std::invalid_argument("drift_lower_logZ: profile fails class-A validation");

    LowerBoundReport lb;
    if (opts.policy == AlphaPolicy::Schedule) {
        const double beta = opts.beta > 0.0 ? opts.beta : beta_default(params);
        lb = lower_bound_estimate(params, N, profile, beta, nsamples, seed, opts.T, opts.threads);
    } else {
        const std::uint64_t pilotSeed = hash_combine(seed, 0x70696c6full);  // independent pilot draw
        const CutoffPilot pilot =
            measure_cutoff_pilot(params, N, profile, opts.pilotSamples, pilotSeed, opts.T, opts.threads);
        const double frac = opts.targetViolFrac > 0.0 ? opts.targetViolFrac : 1.0 / N;
        const double alpha = calibrated_alpha(pilot, params.K, frac);
        lb = lower_bound_core(params, N, profile, alpha, nsamples, seed, opts.T, opts.threads);
    }

    DriftLowerResult out;
    out.report = lb;
    out.minusOneNegligible = lb.total > 5.0;
    out.estimate.N = N;
    out.estimate.method = Method::DriftLower;
    out.estimate.params = params;
    out.estimate.nsamples = nsamples;
    out.estimate.value = lb.total;
    out.estimate.stderr_ = lb.totalStderr;
    out.estimate.acceptFrac = lb.acceptFrac;
    return out;
}

CknUpperResult ckn_upper_logZ(const ModelParams& params, int N, const OptimOptions& opts) {
    CknUpperResult out;
    out.opt = ckn_torus_supremum(params, N, opts);
    out.estimate.N = N;
    out.estimate.method = Method::CknUpper;
    out.estimate.params = params;
    out.estimate.nsamples = 0;
    out.estimate.value = out.opt.value;  // leading-order bound; o(N^{2s}) not computed
    out.estimate.stderr_ = 0.0;
    return out;
}

RateSeries fit_rate(const std::vector<PartitionEstimate>& seriesIn, const ModelParams& params,
                    double predictedSlope) {
    std::vector<PartitionEstimate> series;
    for (const auto& e : seriesIn)
        if (!e.heavyTail) series.push_back(e);
    std::sort(series.begin(), series.end(),
              [](const PartitionEstimate& a, const PartitionEstimate& b) { return a.N < b.N; });
    std::vector<PartitionEstimate> unique;
    for (const auto& e : series)
        if (unique.empty() || unique.back().N != e.N) unique.push_back(e);
    if (unique.size() < 3) throw std::invalid_argument("fit_rate: need >= 3 distinct N values");

    RateSeries rs;
    rs.points = unique;
    rs.exponent = divergence_exponent(params);
    const std::size_t m = unique.size();
    const double x1 = std::pow(static_cast<double>(unique[m - 2].N), rs.exponent);
    const double x2 = std::pow(static_cast<double>(unique[m - 1].N), rs.exponent);
    rs.slope = (unique[m - 1].value - unique[m - 2].value) / (x2 - x1);
    rs.intercept = unique[m - 1].value - rs.slope * x2;
    double acc = 0.0;
    for (const auto& e : unique) {
        const double r = e.value - rs.slope * std::pow(static_cast<double>(e.N), rs.exponent) -
                         rs.intercept;
        acc += r * r;
    }
    rs.residual = std::sqrt(acc / static_cast<double>(m));
    rs.predictedSlope = predictedSlope;
    rs.relGap = std::isnan(predictedSlope)
                    ? std::numeric_limits<double>::quiet_NaN()
                    : std::fabs(rs.slope - predictedSlope) / std::fabs(predictedSlope);
    return rs;
}

}  // namespace gibbslab
