#pragma once

#include <complex>

#include "mirrorphase/params.hpp"

namespace mirrorphase {

// Boundary modulation functions of the dimensionless distance u = 2*omega0*z/c.
//
//   fx(u) = fy(u) = (3/(2u^3)) [ u cos u + (u^2 - 1) sin u ]
//   fz(u)         = (3/u^3)    [ u cos u - sin u ]
//
// Both are evaluated from the closed formula above a switch threshold u0 and
// from the Taylor series below it; the u^-3 prefactor makes the direct form
// cancel catastrophically as u -> 0. The two branches agree to better than
// 1e-10 on [u0/2, 2*u0].
inline constexpr double modulation_series_threshold = 1e-2;

// Throws std::domain_error for u < 0 or NaN. u = +inf returns 0.
double mod_fx(double u);
double mod_fz(double u);
inline double mod_fy(double u) { return mod_fx(u); }  // fy = fx, by symmetry in the plane

struct ModulationValues {
    double fx, fy, fz;
};
ModulationValues modulation(double u);

// Spectral density G(lambda) of the field correlation along the trajectory,
// in units of omega0, for lambda in units of omega0:
//
//   G(l) = gamma_ratio * l^3 * sum_i alpha_i (1 - f_i(l*u)) * step(l)
//
// Identically zero for lambda <= 0 (vacuum state).
double spectral_density(double lambda_over_omega0, const Geometry& geom,
                        const AtomParams& params);

enum class Axis { x, y, z };

// Boundary part of the proper-frame electric-field two-point function
// <0|E_i(tau) E_i(tau')|0>_b with the i*eps regulator, in natural units
// (hbar = c = eps0 = 1, so the printed prefactor hbar*c/(pi^2 eps0) is 1/pi^2):
//
//   x, y:  -(1/pi^2) (dtau^2 + 4 z^2) / [ (dtau - i eps)^2 - 4 z^2 ]^3
//   z:      (1/pi^2)                1 / [ (dtau - i eps)^2 - 4 z^2 ]^2
//
// Used only by the windowed-Fourier verification oracle, never as a
// production path for G. Throws std::domain_error for eps <= 0 or z <= 0.
std::complex<double> correlator_boundary(double dtau, double z, double eps,
                                         Axis component);

}  // namespace mirrorphase
