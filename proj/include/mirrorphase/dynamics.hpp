#pragma once

#include <complex>
#include <vector>

#include "mirrorphase/dissipator.hpp"
#include "mirrorphase/params.hpp"

namespace mirrorphase {

// Reduced 2x2 state. ee is the excited population (the paper's rho_11), eg
// the upper-right coherence. Unit trace, Hermitian by construction.
struct DensityMatrix2 {
    double ee = 0.0;
    std::complex<double> eg{0.0, 0.0};
    double gg = 1.0;

    double trace() const { return ee + gg; }
    double det() const { return ee * gg - std::norm(eg); }
    double purity() const { return ee * ee + gg * gg + 2.0 * std::norm(eg); }
};

// d(rho)/d(phi); traceless and Hermitian.
struct RhoTangent {
    double ee = 0.0;
    std::complex<double> eg{0.0, 0.0};
    double gg = 0.0;
};

// lambda_pm = (1 +- eta)/2 with eta = sqrt(rho3^2 + e^{-4 a phi} sin^2 theta)
// and rho3 = e^{-4 a phi} (1 + cos theta) - 1 (A = B specialization).
// theta_tau in [0, pi] from tan(theta_tau/2) = sqrt((eta+rho3)/(eta-rho3)).
struct EigenDecomp {
    double lambda_plus = 1.0;
    double lambda_minus = 0.0;
    double theta_tau = 0.0;
    double eta = 1.0;
    double rho3 = 0.0;
    // Set at the fully degenerate instant (rho = 1/2 identity, reachable only
    // for sin(theta) = 0); theta_tau then carries the limit from phi-.
    bool degenerate = false;
};

struct TrajectoryPoint {
    double phi = 0.0;
    DensityMatrix2 state;
};

// Ordered, strictly increasing phi, first entry at phi = 0.
using Trajectory = std::vector<TrajectoryPoint>;

// Closed-form solution of the master equation with a = b:
//   ee = e^{-4 a phi} cos^2(theta/2),  eg = (1/2) e^{-2 a phi - i w phi} sin theta.
// Exactly pure at phi = 0. Requires phi >= 0 and coeffs.a == coeffs.b.
DensityMatrix2 rho_analytic(double phi, const AtomParams& params,
                            const DissipatorCoeffs& coeffs);

EigenDecomp eigen_decompose(double phi, const AtomParams& params,
                            const DissipatorCoeffs& coeffs);

// Full Kossakowski-Lindblad right-hand side in dimensionless time,
//   d(rho)/d(phi) = -i (w/2) [sigma3, rho] + (1/2) sum_ij a_ij
//                   (2 sigma_j rho sigma_i - sigma_i sigma_j rho - rho sigma_i sigma_j),
// assembled from the 3x3 Kossakowski matrix with independent a, b. This is
// the brute-force route kept deliberately separate from rho_analytic.
RhoTangent lindblad_rhs(const DensityMatrix2& state, const AtomParams& params,
                        const DissipatorCoeffs& coeffs);

// Fixed-step classical RK4 from the pure initial state, steps >= 10. No trace
// renormalization (trace drift is a diagnostic). Throws NumericalFailure with
// the offending phi if positivity is violated beyond 1e-8.
Trajectory evolve_numeric(const AtomParams& params, const DissipatorCoeffs& coeffs,
                          double phi_end, int steps);

// Uniform sampling of rho_analytic on [0, phi_end] with `points` entries.
Trajectory sample_analytic(const AtomParams& params, const DissipatorCoeffs& coeffs,
                           double phi_end, int points);

}  // namespace mirrorphase
