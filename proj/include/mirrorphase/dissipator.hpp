#pragma once

#include <array>
#include <complex>

#include "mirrorphase/params.hpp"

namespace mirrorphase {

// Kossakowski scalars in units of omega0. For the vacuum bath a = b always
// (G(-omega0) = 0); the fields stay separate because the Lindblad right-hand
// side keeps the general form.
struct DissipatorCoeffs {
    double a = 0.0;          // A / omega0
    double b = 0.0;          // B / omega0
    double omega_eff = 1.0;  // Omega / omega0
};

struct KossakowskiMatrix {
    std::array<std::array<std::complex<double>, 3>, 3> m{};

    const std::complex<double>& operator()(int i, int j) const { return m[i][j]; }
    std::complex<double>& operator()(int i, int j) { return m[i][j]; }
};

// a = b = (gamma_ratio/4) * sum_i alpha_i (1 - f_i(u)); omega_eff = 1
// (bare Lamb-shift policy).
DissipatorCoeffs build_coeffs(const AtomParams& params, const Geometry& geom);

// a_ij = A d_ij - i B e_ijk d_k3 - A d_i3 d_j3, i.e.
//   [  A  -iB  0 ]
//   [ iB    A  0 ]
//   [  0    0  0 ]
// Hermitian, positive semidefinite for A >= |B|; eigenvalues {A+B, A-B, 0}.
KossakowskiMatrix kossakowski_matrix(const DissipatorCoeffs& coeffs);

// Lamb-shift policy for the effective level spacing. Only `bare` is
// supported: the shift enters the phase at second order in gamma_ratio and
// its integral needs a cutoff, so Omega = omega0 exactly. The enum exists so
// a regularized policy can be added without an interface change.
enum class LambShiftPolicy { bare };

// Returns Omega/omega0. Throws std::invalid_argument for an unknown policy.
double effective_omega(const AtomParams& params, const Geometry& geom,
                       LambShiftPolicy policy);

}  // namespace mirrorphase
