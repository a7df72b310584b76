#pragma once

namespace mirrorphase {

// Everything internal is dimensionless: frequencies in units of omega0, times
// as phi = omega0*tau, distances as u = 2*omega0*z/c. SI appears only at the
// interface boundary (CLI, phase_difference, sweep_z).
inline constexpr double speed_of_light = 299792458.0;  // m/s

inline double u_from_distance(double z_m, double omega0_rad_s) {
    return 2.0 * omega0_rad_s * z_m / speed_of_light;
}

inline double distance_from_u(double u, double omega0_rad_s) {
    return u * speed_of_light / (2.0 * omega0_rad_s);
}

inline double phi_from_time(double t_s, double omega0_rad_s) {
    return omega0_rad_s * t_s;
}

}  // namespace mirrorphase
