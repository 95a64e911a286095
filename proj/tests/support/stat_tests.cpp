#include "support/stat_tests.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gibbslab::stat {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

bool ks_two_sample_reject(std::vector<double> a, std::vector<double> b, double level) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) throw std::invalid_argument("ks: empty sample");
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    const double c = level <= 0.01 ? 1.628 : 1.358;
    return d > c * std::sqrt((static_cast<double>(n) + m) / (static_cast<double>(n) * m));
}

double anderson_darling_astar(std::vector<double> x) {
    const std::size_t n = x.size();
    if (n < 8) throw std::invalid_argument("anderson-darling: sample too small");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    std::sort(x.begin(), x.end());
    double a2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double zi = normal_cdf((x[i] - mean) / sd);
        const double zn = normal_cdf((x[n - 1 - i] - mean) / sd);
        const double lo = std::clamp(zi, 1e-300, 1.0 - 1e-16);
        const double hi = std::clamp(zn, 1e-300, 1.0 - 1e-16);
        a2 += (2.0 * static_cast<double>(i) + 1.0) * (std::log(lo) + std::log1p(-hi));
    }
    a2 = -static_cast<double>(n) - a2 / static_cast<double>(n);
    return a2 * (1.0 + 0.75 / n + 2.25 / (static_cast<double>(n) * n));
}

bool anderson_darling_reject(std::vector<double> x, double level) {
    const double astar = anderson_darling_astar(std::move(x));
    return astar > (level <= 0.01 ? 1.035 : 0.752);
}

namespace {

double gamma_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cf(double a, double x) {
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gammp(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gammp: bad arguments");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_series(a, x) : 1.0 - gamma_cf(a, x);
}

double chi2_quantile(double df, double prob) {
    double lo = 0.0, hi = df + 40.0 * std::sqrt(2.0 * df) + 40.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gammp(0.5 * df, 0.5 * mid) < prob ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace gibbslab::stat
