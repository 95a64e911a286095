// periodize.hpp
// Continuum profiles on R^d and the rescale-then-periodize map onto the
// torus: the periodization of f_eps(x) = eps^{-d/2} f(x/eps) has Fourier
// coefficients eps^{d/2} F(f)(eps n), which is how every profile enters the
// torus computations.
#pragma once

#include <array>
#include <functional>
#include <string>

#include "gibbslab/field.hpp"

namespace gibbslab {

// A profile is known through its continuum Fourier transform, evaluated on
// demand, plus the few integrals needed for validation.
struct Profile {
    int d = 1;
    std::function<cplx(const std::array<double, 3>&)> fourier;  // F_{R^d}(f)(xi)
    double l2NormSq = 1.0;   // integral of |F(f)|^2
    double tailFrac = 0.0;   // fraction of that integral outside the unit ball
    std::string name;

    cplx ft(double x0, double x1 = 0.0, double x2 = 0.0) const { return fourier({x0, x1, x2}); }
};

// f(x) = e^{-pi |x|^2}; self-dual, F(f)(xi) = e^{-pi |xi|^2}. Not unit-mass.
Profile gaussian_profile(int d);

// Admissible drift profile: radial F(f)(xi) = c |xi| exp(-1/(1-|xi|^2)) on
// |xi| < 1, zero outside, normalized to unit L^2. Vanishes at xi = 0.
Profile class_a_default_profile(int d);

// Windowed continuum transform of one period of a box field, evaluated by the
// Dirichlet kernel; exact for the field restricted to [-L/2, L/2)^d.
cplx windowed_ft(const SpectralField& boxField, const std::array<double, 3>& xi);

// Wrap a box field as a profile: optionally remove the zero coefficient
// (class-A mapping), translate the |u|-peak to the origin, and normalize to
// unit L^2. The grid-level Fourier support certifies the unit-ball condition.
Profile profile_from_box_field(const SpectralField& u, bool zeroDc, const std::string& name);

struct ClassAReport {
    double l2Err = 0.0;    // | ||f||_2^2 - 1 |
    double dcAbs = 0.0;    // |F(f)(0)|
    double tailFrac = 0.0; // L^2 fraction outside B_1
    bool ok = false;
};
ClassAReport validate_class_a(const Profile& f, double tol = 1e-6);

// Periodization of the rescaled profile: coefficients eps^{d/2} F(f)(eps n)
// for |n| <= Nout on the unit torus. meanZero is set only when F(f)(0) = 0.
SpectralField periodize_rescale_profile(const Profile& f, double eps, int Nout, double p = 2.0);

// Same map starting from physical samples of the profile on a box; the
// transform F(f) is evaluated by grid quadrature. Fails when eps*Nout exceeds
// the Nyquist frequency M/(2L) of the sampled box.
SpectralField periodize_rescale(const std::vector<cplx>& samples, const GridSpec& box, double eps,
                                int Nout, double p = 2.0);

}  // namespace gibbslab
