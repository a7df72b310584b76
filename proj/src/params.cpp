#include "mirrorphase/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mirrorphase/constants.hpp"

namespace mirrorphase {

void AtomParams::validate() const {
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
        throw std::invalid_argument("AtomParams: omega0 must be positive and finite");
    if (!(gamma_ratio > 0.0))
        throw std::invalid_argument("AtomParams: gamma_ratio must be positive");
    if (!(gamma_ratio < 1e-2))
        throw std::invalid_argument(
            "AtomParams: weak coupling requires gamma_ratio < 1e-2, got " +
            std::to_string(gamma_ratio));
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw std::invalid_argument("AtomParams: theta must lie in [0, pi]");
    for (double ai : alpha)
        if (!(ai >= 0.0) || !std::isfinite(ai))
            throw std::invalid_argument("AtomParams: alpha components must be >= 0");
    if (std::abs(alpha_sum() - 1.0) > 1e-9)
        throw std::invalid_argument("AtomParams: alpha must sum to 1 within 1e-9");
}

Geometry Geometry::from_u(double u) {
    if (std::isnan(u) || u < 0.0)
        throw std::domain_error("Geometry: u = 2*omega0*z/c must be >= 0");
    Geometry g;
    g.u_ = u;
    return g;
}

Geometry Geometry::from_distance(double z_m, double omega0_rad_s) {
    if (!(z_m > 0.0))
        throw std::domain_error("Geometry: distance z must be > 0");
    if (!(omega0_rad_s > 0.0))
        throw std::domain_error("Geometry: omega0 must be > 0");
    return from_u(u_from_distance(z_m, omega0_rad_s));
}

}  // namespace mirrorphase
