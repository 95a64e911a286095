// Sampler laws: per-mode variances, determinism, Brownian paths, and the
// distributional identities between the two field constructions.
#include <doctest.h>

#include <cmath>
#include <map>

#include "gibbslab/rng.hpp"
#include "gibbslab/sampler.hpp"
#include "gibbslab/stats.hpp"
#include "support/stat_tests.hpp"

using namespace gibbslab;

TEST_SUITE_BEGIN("sampler");

TEST_CASE("N=1 massless field has exactly the two unit modes") {
    const ModelParams mp{1, 1.0, 6.0, 1.0, false};
    const int draws = 4000;
    double sum2p = 0.0, sum2m = 0.0;
    for (int i = 0; i < draws; ++i) {
        const FieldSample fs = sample_gff(mp, 1, 1000 + static_cast<std::uint64_t>(i));
        double total = 0.0;
        for (const cplx& c : fs.field.coeffs) total += std::norm(c);
        sum2p += std::norm(fs.field.at(Mode{1, 0, 0}));
        sum2m += std::norm(fs.field.at(Mode{-1, 0, 0}));
        CHECK(std::abs(fs.field.at(Mode{0, 0, 0})) == 0.0);
        CHECK(total == std::norm(fs.field.at(Mode{1, 0, 0})) + std::norm(fs.field.at(Mode{-1, 0, 0})));
    }
    const double expect = 1.0 / std::pow(2.0 * M_PI, 2.0);
    // E|u^(n)|^2 = (2 pi)^{-2}, sd of the mean ~ expect/sqrt(draws)
    CHECK(std::fabs(sum2p / draws - expect) < 4.0 * expect / std::sqrt(static_cast<double>(draws)));
    CHECK(std::fabs(sum2m / draws - expect) < 4.0 * expect / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("fixed seed reproduces the field exactly") {
    const ModelParams mp{2, 1.5, 6.0, 1.0, false};
    const FieldSample a = sample_gff(mp, 6, 424242);
    const FieldSample b = sample_gff(mp, 6, 424242);
    CHECK(a.field.coeffs == b.field.coeffs);
    const FieldSample c = sample_gff(mp, 6, 424243);
    CHECK(a.field.coeffs != c.field.coeffs);
}

TEST_CASE("massive sampler populates the zero mode with unit-variance law") {
    const ModelParams mp{1, 1.0, 6.0, 1.0, true};
    double sum2 = 0.0;
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) {
        const FieldSample fs = sample_gff(mp, 2, 77 + static_cast<std::uint64_t>(i));
        sum2 += std::norm(fs.field.at(Mode{0, 0, 0}));
        CHECK_FALSE(fs.field.meanZero);
    }
    CHECK(std::fabs(sum2 / draws - 1.0) < 4.0 / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("expected Sobolev mass of the truncated field is the mode count") {
    // E ||Y_N||_{H^s}^2 = #modes = 2N in d = 1
    const ModelParams mp{1, 1.0, 6.0, 1.0, false};
    const int N = 64, draws = 10000;
    std::vector<double> h(static_cast<std::size_t>(draws));
    for (int i = 0; i < draws; ++i) {
        const FieldSample fs = sample_gff(mp, N, 9000 + static_cast<std::uint64_t>(i));
        const double v = sobolev_norm(fs.field, 1.0);
        h[static_cast<std::size_t>(i)] = v * v;
    }
    const auto ms = mean_stderr(h);
    CHECK(std::fabs(ms.mean - 2.0 * N) <= 3.0 * ms.stderr_);
}

TEST_CASE("Brownian paths: start, terminal variance, independent increments") {
    const int T = 64, paths = 10000;
    std::vector<double> reB1(static_cast<std::size_t>(paths));
    std::vector<double> inc1(static_cast<std::size_t>(paths)), inc2(static_cast<std::size_t>(paths));
    for (int i = 0; i < paths; ++i) {
        const BrownianModes b = sample_brownian(1, 3, T, 31337 + static_cast<std::uint64_t>(i));
        CHECK(std::abs(b.at(0, 0)) == 0.0);
        // mode index of n = 3 in lexicographic order {-3,...,-1,1,...,3}
        std::size_t m3 = 0;
        for (std::size_t m = 0; m < b.modes.size(); ++m)
            if (b.modes[m] == Mode{3, 0, 0}) m3 = m;
        reB1[static_cast<std::size_t>(i)] = b.at(m3, T).real();
        inc1[static_cast<std::size_t>(i)] = b.at(m3, T / 2).real();
        inc2[static_cast<std::size_t>(i)] = b.at(m3, T).real() - b.at(m3, T / 2).real();
    }
    const auto v = mean_stderr(reB1);
    double var = 0.0;
    for (double x : reB1) var += x * x;
    var /= paths;
    CHECK(var > 0.47);
    CHECK(var < 0.53);
    // increment correlation over [0, 1/2] and [1/2, 1]
    double c12 = 0.0, v1 = 0.0, v2 = 0.0;
    for (int i = 0; i < paths; ++i) {
        c12 += inc1[static_cast<std::size_t>(i)] * inc2[static_cast<std::size_t>(i)];
        v1 += inc1[static_cast<std::size_t>(i)] * inc1[static_cast<std::size_t>(i)];
        v2 += inc2[static_cast<std::size_t>(i)] * inc2[static_cast<std::size_t>(i)];
    }
    CHECK(std::fabs(c12 / std::sqrt(v1 * v2)) < 0.05);
    (void)v;
}

TEST_CASE("terminal field: zero path, per-mode variance, law matches sample_gff") {
    const ModelParams mp{1, 1.0, 6.0, 1.0, false};
    BrownianModes zeroPath = sample_brownian(1, 4, 8, 1);
    std::fill(zeroPath.path.begin(), zeroPath.path.end(), cplx{0.0, 0.0});
    CHECK(l2_norm(terminal_field(zeroPath, mp, 4)) == 0.0);

    const int draws = 10000, N = 8;
    std::vector<double> l2a(static_cast<std::size_t>(draws)), l2b(static_cast<std::size_t>(draws));
    double mode2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const BrownianModes b = sample_brownian(1, N, 16, 500000 + static_cast<std::uint64_t>(i));
        const SpectralField via = terminal_field(b, mp, N);
        const FieldSample direct = sample_gff(mp, N, 800000 + static_cast<std::uint64_t>(i));
        double t = 0.0;
        for (const cplx& c : via.coeffs) t += std::norm(c);
        l2a[static_cast<std::size_t>(i)] = t;
        t = 0.0;
        for (const cplx& c : direct.field.coeffs) t += std::norm(c);
        l2b[static_cast<std::size_t>(i)] = t;
        mode2 += std::norm(via.at(Mode{2, 0, 0}));
    }
    const double expect2 = std::pow(4.0 * M_PI, -2.0);
    CHECK(std::fabs(mode2 / draws - expect2) < 4.0 * expect2 / std::sqrt(static_cast<double>(draws)));
    CHECK_FALSE(stat::ks_two_sample_reject(l2a, l2b, 0.01));
}

TEST_CASE("isotropy: shell-wise second moments agree (d = 2)") {
    const ModelParams mp{2, 1.5, 20.0 / 3.0, 1.0, false};
    const int draws = 10000, N = 4;
    // shells with more than one |n|-equivalent mode
    std::map<int, std::vector<Mode>> shells;
    for (const Mode& n : ball_modes(2, N, false))
        shells[n[0] * n[0] + n[1] * n[1]].push_back(n);
    std::map<std::size_t, double> acc;  // flattened (shell, mode) sums
    std::vector<std::pair<int, Mode>> tracked;
    for (const auto& [r2, modes] : shells)
        if (modes.size() >= 4 && r2 <= 8)
            for (const Mode& n : modes) tracked.emplace_back(r2, n);
    std::vector<double> sums(tracked.size(), 0.0);
    for (int i = 0; i < draws; ++i) {
        const FieldSample fs = sample_gff(mp, N, 321000 + static_cast<std::uint64_t>(i));
        for (std::size_t t = 0; t < tracked.size(); ++t)
            sums[t] += std::norm(fs.field.at(tracked[t].second));
    }
    // chi-square homogeneity within each shell at the 1% level
    std::map<int, std::vector<double>> byShell;
    for (std::size_t t = 0; t < tracked.size(); ++t) byShell[tracked[t].first].push_back(sums[t] / draws);
    for (const auto& [r2, means] : byShell) {
        double shellMean = 0.0;
        for (double m : means) shellMean += m;
        shellMean /= static_cast<double>(means.size());
        double stat = 0.0;
        for (double m : means) {
            const double z = (m - shellMean) / shellMean * std::sqrt(static_cast<double>(draws));
            stat += z * z;  // per-mode |u|^2 has unit relative variance
        }
        CHECK(stat < stat::chi2_quantile(static_cast<double>(means.size() - 1), 0.99));
    }
}

TEST_CASE("per-mode components are Gaussian (Anderson-Darling at 1%)") {
    const ModelParams mp{1, 1.0, 6.0, 1.0, false};
    const int draws = 10000;
    std::vector<double> re(static_cast<std::size_t>(draws)), im(static_cast<std::size_t>(draws));
    for (int i = 0; i < draws; ++i) {
        const FieldSample fs = sample_gff(mp, 4, 654321 + static_cast<std::uint64_t>(i));
        re[static_cast<std::size_t>(i)] = fs.field.at(Mode{3, 0, 0}).real();
        im[static_cast<std::size_t>(i)] = fs.field.at(Mode{-2, 0, 0}).imag();
    }
    CHECK_FALSE(stat::anderson_darling_reject(re, 0.01));
    CHECK_FALSE(stat::anderson_darling_reject(im, 0.01));
}

TEST_CASE("nesting: projecting a finer sample matches the coarser law") {
    const ModelParams mp{1, 1.0, 6.0, 1.0, false};
    const int draws = 10000;
    std::vector<double> projected(static_cast<std::size_t>(draws)), direct(static_cast<std::size_t>(draws));
    for (int i = 0; i < draws; ++i) {
        const FieldSample fine = sample_gff(mp, 8, 111000 + static_cast<std::uint64_t>(i));
        const SpectralField proj = project_freq(fine.field, 4.0);
        double t = 0.0;
        for (const cplx& c : proj.coeffs) t += std::norm(c);
        projected[static_cast<std::size_t>(i)] = t;
        const FieldSample coarse = sample_gff(mp, 4, 222000 + static_cast<std::uint64_t>(i));
        t = 0.0;
        for (const cplx& c : coarse.field.coeffs) t += std::norm(c);
        direct[static_cast<std::size_t>(i)] = t;
    }
    CHECK_FALSE(stat::ks_two_sample_reject(projected, direct, 0.01));
}

TEST_SUITE_END();
