// stats.hpp
// Deterministic reductions and small fitting helpers used by the Monte Carlo
// estimators. Pairwise summation keeps reductions associative-in-practice so
// results do not depend on worker count.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace gibbslab {

inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

inline MeanStderr mean_stderr(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean_stderr: empty sample");
    const double n = static_cast<double>(v.size());
    const double m = pairwise_sum(v) / n;
    if (v.size() == 1) return {m, 0.0};
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - m) * (v[i] - m);
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {m, std::sqrt(var / n)};
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rmsResidual = 0.0;
};

// Ordinary least squares y = slope*x + intercept over all points.
inline LineFit ols_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ols_fit: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("ols_fit: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.slope * x[i] - fit.intercept;
        acc += r * r;
    }
    fit.rmsResidual = std::sqrt(acc / n);
    return fit;
}

// Evaluate fn(i) for i in [0, n) into a slot vector, optionally on several
// threads. Slot writes are disjoint, so the result is identical for any
// worker count.
inline std::vector<double> parallel_map(std::size_t n, int threads,
                                        const std::function<double(std::size_t)>& fn) {
    std::vector<double> out(n);
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    const int nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = static_cast<std::size_t>(t); i < n; i += static_cast<std::size_t>(nt))
                out[i] = fn(i);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace gibbslab
