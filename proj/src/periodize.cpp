#include "gibbslab/periodize.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace gibbslab {

namespace {

double norm3(const std::array<double, 3>& xi, int d) {
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) r2 += xi[i] * xi[i];
    return std::sqrt(r2);
}

// Surface area of the unit sphere in R^d.
double sphere_area(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        default: return 4.0 * M_PI;
    }
}

double bump(double r) { return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0; }

// Simpson quadrature of g on [0,1].
double simpson01(const std::function<double(double)>& g, int intervals) {
    const double h = 1.0 / intervals;
    double acc = g(0.0) + g(1.0);
    for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(i * h);
    return acc * h / 3.0;
}

}  // namespace

Profile gaussian_profile(int d) {
    Profile f;
    f.d = d;
    f.fourier = [d](const std::array<double, 3>& xi) {
        double r2 = 0.0;
        for (int i = 0; i < d; ++i) r2 += xi[i] * xi[i];
        return cplx{std::exp(-M_PI * r2), 0.0};
    };
    // integral of e^{-2 pi |xi|^2} over R^d
    f.l2NormSq = std::pow(2.0, -0.5 * d);
    // mass fraction outside B_1, by radial quadrature out to r = 4
    const double inside = simpson01([&](double t) {
        const double r = t;
        return std::exp(-2.0 * M_PI * r * r) * std::pow(r, d - 1);
    }, 2048) * sphere_area(d);
    f.tailFrac = std::max(0.0, 1.0 - inside / f.l2NormSq);
    f.name = "gaussian";
    return f;
}

Profile class_a_default_profile(int d) {
    const double radial = simpson01([&](double r) {
        const double b = bump(r);
        return r * r * b * b * std::pow(r, d - 1);
    }, 4096);
    const double c = 1.0 / std::sqrt(sphere_area(d) * radial);
    Profile f;
    f.d = d;
    f.fourier = [d, c](const std::array<double, 3>& xi) {
        const double r = norm3(xi, d);
        return cplx{c * r * bump(r), 0.0};
    };
    f.l2NormSq = 1.0;
    f.tailFrac = 0.0;
    f.name = "classA-bump";
    return f;
}

cplx windowed_ft(const SpectralField& u, const std::array<double, 3>& xi) {
    const GridSpec& g = u.grid;
    // integral over one centered period: sum_k u^(k) L^d prod sinc(L(xi_i - k_i/L))
    auto sinc = [](double z) { return z == 0.0 ? 1.0 : std::sin(M_PI * z) / (M_PI * z); };
    cplx acc{0.0, 0.0};
    for_each_mode(g, [&](const Mode& n, std::size_t idx) {
        const cplx c = u.coeffs[idx];
        if (c == cplx{0.0, 0.0}) return;
        double w = 1.0;
        for (int i = 0; i < g.d; ++i) w *= sinc(g.L * (xi[i] - n[i] / g.L));
        acc += c * w;
    });
    return acc * u.grid.volume();
}

Profile profile_from_box_field(const SpectralField& uIn, bool zeroDc, const std::string& name) {
    SpectralField u = uIn;
    if (zeroDc) u.coeffs[u.flat_index(Mode{0, 0, 0})] = cplx{0.0, 0.0};

    // Translate the modulus peak to the origin so one centered period captures
    // the profile, and fix the global phase for deterministic reports.
    std::vector<cplx> phys = to_physical(u);
    std::size_t peak = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < phys.size(); ++i)
        if (std::abs(phys[i]) > best) {
            best = std::abs(phys[i]);
            peak = i;
        }
    std::array<int, 3> shift{0, 0, 0};
    {
        std::size_t rem = peak;
        for (int i = u.grid.d - 1; i >= 0; --i) {
            shift[i] = static_cast<int>(rem % static_cast<std::size_t>(u.grid.M));
            rem /= static_cast<std::size_t>(u.grid.M);
        }
    }
    for_each_mode(u.grid, [&](const Mode& n, std::size_t idx) {
        double phase = 0.0;
        for (int i = 0; i < u.grid.d; ++i)
            phase -= 2.0 * M_PI * n[i] * static_cast<double>(shift[i]) / u.grid.M;
        u.coeffs[idx] *= cplx{std::cos(phase), std::sin(phase)};
    });
    const cplx atPeak = windowed_ft(u, {0.0, 0.0, 0.0});
    // normalize in L^2 and rotate so the windowed transform is real where it counts
    const double l2 = l2_norm(u);
    if (l2 == 0.0) throw std::invalid_argument("profile_from_box_field: zero field");
    cplx gauge{1.0, 0.0};
    if (std::abs(atPeak) > 0.0) gauge = std::conj(atPeak) / std::abs(atPeak);
    scale_inplace(u, gauge / l2);

    auto holder = std::make_shared<SpectralField>(std::move(u));
    Profile f;
    f.d = holder->grid.d;
    f.fourier = [holder](const std::array<double, 3>& xi) { return windowed_ft(*holder, xi); };
    f.l2NormSq = 1.0;
    // grid-level support certificate
    double tail = 0.0, total = 0.0;
    for_each_mode(holder->grid, [&](const Mode& n, std::size_t idx) {
        const double a2 = std::norm(holder->coeffs[idx]);
        total += a2;
        if (holder->mode_norm2(n) > holder->grid.L * holder->grid.L * (1.0 + 1e-12)) tail += a2;
    });
    f.tailFrac = total > 0.0 ? tail / total : 0.0;
    f.name = name;
    return f;
}

ClassAReport validate_class_a(const Profile& f, double tol) {
    ClassAReport r;
    r.l2Err = std::fabs(f.l2NormSq - 1.0);
    r.dcAbs = std::abs(f.ft(0.0, 0.0, 0.0));
    r.tailFrac = f.tailFrac;
    r.ok = r.l2Err <= tol && r.dcAbs <= tol && r.tailFrac <= tol;
    return r;
}

SpectralField periodize_rescale_profile(const Profile& f, double eps, int Nout, double p) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("periodize: need 0 < eps <= 1");
    GridSpec g = default_grid(f.d, Nout, p, 1.0);
    const cplx dc = f.ft(0.0, 0.0, 0.0);
    const double scale = std::pow(eps, 0.5 * f.d);
    SpectralField out(g, /*meanZero=*/std::abs(dc) * scale <= 1e-14);
    for_each_mode(g, [&](const Mode& n, std::size_t idx) {
        if (out.mode_norm2(n) > static_cast<double>(g.N) * g.N + 1e-12) return;
        const cplx v = f.fourier({eps * n[0], eps * n[1], eps * n[2]}) * scale;
        if (out.meanZero && n[0] == 0 && n[1] == 0 && n[2] == 0) return;
        out.coeffs[idx] = v;
    });
    return out;
}

SpectralField periodize_rescale(const std::vector<cplx>& samples, const GridSpec& box, double eps,
                                int Nout, double p) {
    box.validate();
    if (samples.size() != box.grid_count())
        throw std::invalid_argument("periodize_rescale: sample count mismatch");
    const double nyquist = box.M / (2.0 * box.L);
    if (eps * Nout > nyquist * (1.0 + 1e-12))
        throw std::invalid_argument(
            "periodize_rescale: eps too small, requested frequencies exceed the sampled range");
    if (boundary_decay_ratio(samples, box) > 1e-8)
        throw std::invalid_argument("periodize_rescale: profile does not decay at the box boundary");

    // quadrature transform F(f)(xi) at the needed frequencies
    GridSpec g = default_grid(box.d, Nout, p, 1.0);
    const double cell = box.cell_volume();
    SpectralField out(g, /*meanZero=*/false);
    auto ft = [&](const std::array<double, 3>& xi) {
        cplx acc{0.0, 0.0};
        const int M = box.M;
        std::array<int, 3> j{0, 0, 0};
        const std::size_t total = box.grid_count();
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            for (int i = box.d - 1; i >= 0; --i) {
                j[i] = static_cast<int>(rem % static_cast<std::size_t>(M));
                rem /= static_cast<std::size_t>(M);
            }
            double phase = 0.0;
            for (int i = 0; i < box.d; ++i) {
                // centered coordinate of grid point j
                double x = j[i] * box.L / M;
                if (x >= box.L / 2) x -= box.L;
                phase -= 2.0 * M_PI * xi[i] * x;
            }
            acc += samples[flat] * cplx{std::cos(phase), std::sin(phase)};
        }
        return acc * cell;
    };
    const cplx dc = ft({0.0, 0.0, 0.0});
    const double scale = std::pow(eps, 0.5 * box.d);
    out.meanZero = std::abs(dc) * scale <= 1e-14;
    for_each_mode(g, [&](const Mode& n, std::size_t idx) {
        if (out.mode_norm2(n) > static_cast<double>(g.N) * g.N + 1e-12) return;
        if (out.meanZero && n[0] == 0 && n[1] == 0 && n[2] == 0) return;
        out.coeffs[idx] = ft({eps * n[0], eps * n[1], eps * n[2]}) * scale;
    });
    return out;
}

}  // namespace gibbslab
