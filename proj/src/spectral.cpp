#include "mirrorphase/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace mirrorphase {

namespace {

void require_valid_u(double u) {
    if (std::isnan(u) || u < 0.0)
        throw std::domain_error("modulation functions: u must be >= 0");
}

}  // namespace

// fx = (3/(2u^3)) [u cos u + (u^2 - 1) sin u]. The bracket is (2/3)u^3 + O(u^5),
// so the direct form loses ~5 digits already at u ~ 1e-2; below the threshold
// the Taylor series 1 - u^2/5 + 3u^4/280 carries full precision (the dropped
// u^6/3780 term is ~1e-16 at the seam).
double mod_fx(double u) {
    require_valid_u(u);
    if (std::isinf(u)) return 0.0;
    if (u < modulation_series_threshold) {
        const double u2 = u * u;
        return 1.0 + u2 * (-1.0 / 5.0 + u2 * (3.0 / 280.0));
    }
    return 1.5 * (u * std::cos(u) + (u * u - 1.0) * std::sin(u)) / (u * u * u);
}

// fz = (3/u^3) [u cos u - sin u]; series -1 + u^2/10 - u^4/280.
double mod_fz(double u) {
    require_valid_u(u);
    if (std::isinf(u)) return 0.0;
    if (u < modulation_series_threshold) {
        const double u2 = u * u;
        return -1.0 + u2 * (1.0 / 10.0 - u2 / 280.0);
    }
    return 3.0 * (u * std::cos(u) - std::sin(u)) / (u * u * u);
}

ModulationValues modulation(double u) {
    const double fx = mod_fx(u);
    return {fx, fx, mod_fz(u)};
}

double spectral_density(double lambda_over_omega0, const Geometry& geom,
                        const AtomParams& params) {
    params.validate();
    if (std::isnan(lambda_over_omega0))
        throw std::domain_error("spectral_density: lambda is NaN");
    if (lambda_over_omega0 <= 0.0) return 0.0;  // theta(lambda): vacuum has no negative modes

    const double l = lambda_over_omega0;
    double mod_sum;
    if (geom.is_free_space()) {
        mod_sum = params.alpha_sum();
    } else {
        const ModulationValues f = modulation(l * geom.u());
        mod_sum = params.alpha[0] * (1.0 - f.fx) + params.alpha[1] * (1.0 - f.fy) +
                  params.alpha[2] * (1.0 - f.fz);
    }
    return params.gamma_ratio * l * l * l * mod_sum;
}

std::complex<double> correlator_boundary(double dtau, double z, double eps,
                                         Axis component) {
    if (!(eps > 0.0))
        throw std::domain_error(
            "correlator_boundary: eps must be > 0 (the distributional limit is not "
            "representable)");
    if (!(z > 0.0)) throw std::domain_error("correlator_boundary: z must be > 0");

    constexpr double inv_pi2 = 1.0 / (M_PI * M_PI);
    const std::complex<double> d(dtau, -eps);          // c*dtau - i*eps, c = 1
    const std::complex<double> den = d * d - 4.0 * z * z;
    switch (component) {
        case Axis::x:
        case Axis::y:
            return -inv_pi2 * (dtau * dtau + 4.0 * z * z) / (den * den * den);
        case Axis::z:
            return inv_pi2 / (den * den);
    }
    throw std::domain_error("correlator_boundary: bad component");
}

}  // namespace mirrorphase
