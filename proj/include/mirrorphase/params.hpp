#pragma once

#include <array>
#include <limits>

namespace mirrorphase {

// Two-level atom: transition frequency, vacuum decay-rate ratio, initial
// superposition angle, and relative squared dipole components.
struct AtomParams {
    double omega0 = 0.0;       // rad/s; SI boundary only, kernels never use it
    double gamma_ratio = 0.0;  // gamma0 / omega0, dimensionless
    double theta = 0.0;        // initial state cos(theta/2)|+> + sin(theta/2)|->
    std::array<double, 3> alpha{0.0, 0.0, 0.0};  // (ax, ay, az), sum = 1

    // Throws std::invalid_argument. Weak coupling is enforced as
    // gamma_ratio < 1e-2; alpha must sum to 1 within 1e-9.
    void validate() const;

    double alpha_sum() const { return alpha[0] + alpha[1] + alpha[2]; }
};

// Distance to the reflecting plane, stored as u = 2*omega0*z/c.
// u = +infinity encodes free space.
class Geometry {
public:
    static Geometry free_space() { return Geometry(); }

    // Throws std::domain_error for u < 0 or NaN.
    static Geometry from_u(double u);

    // SI boundary: z in meters, z > 0 required.
    static Geometry from_distance(double z_m, double omega0_rad_s);

    bool is_free_space() const { return u_ == std::numeric_limits<double>::infinity(); }
    double u() const { return u_; }

private:
    double u_ = std::numeric_limits<double>::infinity();
};

}  // namespace mirrorphase
