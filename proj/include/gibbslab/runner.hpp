// runner.hpp
// Configuration parsing and experiment orchestration behind the command-line
// tool. Commands: q, ck, ckn, cb, sample, zeta-check, lowerbound, mc-z, rate.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gibbslab {

struct RunConfig {
    std::string command;
    int d = 1;
    double s = 1.0;
    double p = 6.0;
    double K = 1.0;
    bool massive = false;
    int N = 0;
    std::vector<int> nList;
    int nsamples = 1000;
    std::uint64_t seed = 1;
    std::string outPath;    // resolved against GIBBSLAB_OUTDIR when relative
    std::string fieldOut;   // optional optimizer/sample coefficient CSV
    double tol = 1e-8;
    int boxL = 0;  // 0: resolved per command (32 for q, 128/16 for the box solvers)
    int T = 256;
    double beta = 0.0;      // 0 selects the default admissible midpoint
    int threads = 1;
    int multistarts = 8;
    int maxIter = 20000;
    std::string mode;          // rate: "critical" or "supercritical"
    std::string alphaPolicy = "calibrated";  // or "schedule"
    bool withUpper = false;    // rate: also compute ckn-upper rows

    std::string stamp() const;  // canonical key=value line for CSV headers
};

// Exit statuses used by the tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitIo = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags override config-file values; unknown keys are rejected.
RunConfig parse_config(int argc, const char* const* argv);

int run(const RunConfig& cfg);

}  // namespace gibbslab
