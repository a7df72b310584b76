#pragma once

#include <span>
#include <vector>

#include "mirrorphase/dissipator.hpp"
#include "mirrorphase/dynamics.hpp"
#include "mirrorphase/params.hpp"

namespace mirrorphase {

// Geometric phase with its unitary-limit part split off:
//   geometric_part   = -pi (1 - cos theta) per cycle, scaled by Omega/omega0
//                      and the cycle count phi_end / 2pi;
//   environment_part = total - geometric_part (coupling- and boundary-induced).
// total == geometric_part + environment_part by construction.
struct PhaseResult {
    double total = 0.0;
    double geometric_part = 0.0;
    double environment_part = 0.0;
};

struct SweepRow {
    double z_m = 0.0;
    double delta_rad = 0.0;
};

// Mixed-state nonunitary geometric phase of a discretized trajectory,
//   gamma = arg( sqrt(l+(0) l+(T)) <phi+(0)|phi+(T)> exp(-int <phi+|dphi+>) ),
// evaluated from the per-point eigendecomposition of rho. Only the lambda_+
// branch contributes because the initial state is pure (lambda_-(0) = 0).
// The principal-valued arg is unwrapped by the integer multiple of 2*pi
// nearest to the reduced-integral estimate -w * int cos^2(theta_tau/2) dphi
// accumulated from the same trajectory.
//
// Requires >= 100 points and a pure initial state (std::invalid_argument
// otherwise); throws DegeneracyError on an eigenvalue crossing inside the
// trajectory.
double gp_general(const Trajectory& traj, const DissipatorCoeffs& coeffs);

// gamma = -(Omega/omega0) * int_0^phi_end cos^2(theta_tau/2) dphi by adaptive
// quadrature of the smooth integrand (its scale is 1/a, so long horizons stay
// cheap); Simpson fallback with a Richardson check; NumericalFailure on
// non-convergence.
PhaseResult gp_integral(const AtomParams& params, const DissipatorCoeffs& coeffs,
                        double phi_end);

// Closed form gamma = (Omega/omega0) (F(phi_end) - F(0)) with
//   F(phi) = -phi/2 - (1/8a) ln(e^{4 a phi} - Q^2/2 + S)
//            - (1/8a) ln((2 Q^2 e^{-4 a phi} - Q^2 + 2 Q S e^{-4 a phi}))
//   S = sqrt(e^{8 a phi} - e^{4 a phi} Q^2 + Q^2),  Q = 1 + cos theta.
// Evaluated in rescaled decaying variables (w = e^{-4 a phi}) so nothing
// overflows for any a*phi, with the environment part extracted through
// expm1/log1p differences in long double; the theta = pi branch (Q = 0)
// reduces to the exact -(Omega/omega0)*phi_end.
PhaseResult gp_closed_form(const AtomParams& params, const DissipatorCoeffs& coeffs,
                           double phi_end);

// Single-cycle series expansion to first order in gamma_ratio:
//   gamma ~= -pi (1 - cos theta)
//            - pi^2 (gamma_ratio/2) sum_i alpha_i (1 - f_i(u)) (2 + cos theta) sin^2 theta.
PhaseResult gp_first_order(const AtomParams& params, const Geometry& geom);

// Angle maximizing the environment-induced envelope (2 + cos theta) sin^2 theta
// on (0, pi): the root of 3 cos^2 + 4 cos - 1 = 0, i.e. cos theta* = (sqrt(28)-4)/6,
// located by bracketed bisection to <= 1e-12.
double optimal_theta();

// Phase difference between trajectories at z0 (reference) and z, both evolved
// for lab time T: delta = gamma(z0) - gamma(z). Computed as the difference of
// closed-form environment parts; the common geometric part (identical for
// both distances when Omega = omega0) cancels symbolically, which preserves
// ~10 significant digits although the totals are ~1e6 rad.
double phase_difference(double z_m, double z0_m, const AtomParams& params,
                        double T_s);

// delta(z) over a grid of distances; rows match the input order. Pure per-row
// work, optionally fanned out over `threads` workers with byte-identical
// output either way.
std::vector<SweepRow> sweep_z(std::span<const double> z_grid_m, double z0_m,
                              const AtomParams& params, double T_s,
                              unsigned threads = 1);

// gamma_non / gamma_0 = beta / z^3 for an absorbing boundary
// (SI: z in m, beta in m^3).
double nonradiative_ratio(double z_m, double beta_m3);

}  // namespace mirrorphase
