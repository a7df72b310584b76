#include "mirrorphase/dissipator.hpp"

#include <stdexcept>

#include "mirrorphase/spectral.hpp"

namespace mirrorphase {

DissipatorCoeffs build_coeffs(const AtomParams& params, const Geometry& geom) {
    params.validate();
    double mod_sum;
    if (geom.is_free_space()) {
        mod_sum = params.alpha_sum();
    } else {
        const ModulationValues f = modulation(geom.u());
        mod_sum = params.alpha[0] * (1.0 - f.fx) + params.alpha[1] * (1.0 - f.fy) +
                  params.alpha[2] * (1.0 - f.fz);
    }
    const double a = 0.25 * params.gamma_ratio * mod_sum;
    return {a, a, 1.0};
}

KossakowskiMatrix kossakowski_matrix(const DissipatorCoeffs& coeffs) {
    KossakowskiMatrix k;
    const std::complex<double> i(0.0, 1.0);
    k(0, 0) = coeffs.a;
    k(1, 1) = coeffs.a;
    k(0, 1) = -i * coeffs.b;
    k(1, 0) = i * coeffs.b;
    // a_33 = A - A = 0, third row/column vanish
    return k;
}

double effective_omega(const AtomParams& params, const Geometry& geom,
                       LambShiftPolicy policy) {
    params.validate();
    (void)geom;  // the bare policy is geometry-independent
    if (policy != LambShiftPolicy::bare)
        throw std::invalid_argument("effective_omega: unknown Lamb-shift policy");
    return 1.0;
}

}  // namespace mirrorphase
