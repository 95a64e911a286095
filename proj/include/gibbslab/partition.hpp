// partition.hpp
// Three routes to log Z_{K,N}: direct Monte Carlo at small N, the drift
// variational lower bound, and the finite-N torus supremum as the
// leading-order upper proxy. Divergence rates are fitted against N^{2s}
// (critical) or N^{dp/2-d} (supercritical).
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gibbslab/drift.hpp"
#include "gibbslab/grid.hpp"
#include "gibbslab/optim.hpp"

namespace gibbslab {

inline constexpr std::uint64_t kTagDirectMc = 0x6d637a00ull;

enum class Method { DirectMc, DriftLower, CknUpper };
const char* to_string(Method m);

struct PartitionEstimate {
    int N = 0;
    Method method = Method::DirectMc;
    double value = 0.0;    // estimate of log Z_{K,N} or a bound on it
    double stderr_ = 0.0;  // 0 for deterministic bounds
    int nsamples = 0;
    ModelParams params;
    double acceptFrac = 1.0;   // direct MC: empirical cutoff-acceptance fraction
    double cv = 0.0;           // direct MC: coefficient of variation of the integrand
    bool heavyTail = false;    // CV >= 10: excluded from fits
};

// Largest N whose crude integrand scale (#modes)^{(p-2)/2} K^p N^{dp/2-d}/p
// stays below exp-overflow headroom.
int direct_mc_nmax(const ModelParams& params, double logCap = 200.0);

PartitionEstimate direct_mc_logZ(const ModelParams& params, int N, int nsamples,
                                 std::uint64_t seed, int threads = 1);

enum class AlphaPolicy {
    Schedule,   // alpha = K - N^{-beta} with the default admissible beta
    Calibrated  // alpha from the measured cutoff-noise headroom rule
};

struct DriftLowerOptions {
    AlphaPolicy policy = AlphaPolicy::Schedule;
    double beta = 0.0;           // 0: use beta_default(params)
    int T = 256;
    int pilotSamples = 1000;
    double targetViolFrac = 0.0; // 0: the N-decaying default 1/N
    int threads = 1;
};

struct DriftLowerResult {
    PartitionEstimate estimate;
    LowerBoundReport report;
    bool minusOneNegligible = false;  // bound exceeds 5, so the -1 inside the
                                      // log is exponentially irrelevant
};

DriftLowerResult drift_lower_logZ(const ModelParams& params, int N, const Profile& profile,
                                  int nsamples, std::uint64_t seed,
                                  const DriftLowerOptions& opts = {});

struct CknUpperResult {
    PartitionEstimate estimate;
    OptimResult opt;
};
CknUpperResult ckn_upper_logZ(const ModelParams& params, int N, const OptimOptions& opts = {});

struct RateSeries {
    std::vector<PartitionEstimate> points;
    double exponent = 0.0;       // 2s (critical) or dp/2 - d (supercritical)
    double slope = 0.0;          // least squares through the two largest N
    double intercept = 0.0;
    double residual = 0.0;       // rms residual of that line over all points
    double predictedSlope = 0.0; // C_K or C_B K^p / p
    double relGap = 0.0;         // |slope - predicted| / |predicted|
};

// Least squares of value against N^exponent; slope from the two largest N
// (the intercept absorbs the lower-order corrections), residual over all
// points. Heavy-tailed direct-MC estimates are excluded.
RateSeries fit_rate(const std::vector<PartitionEstimate>& series, const ModelParams& params,
                    double predictedSlope = std::numeric_limits<double>::quiet_NaN());

}  // namespace gibbslab
