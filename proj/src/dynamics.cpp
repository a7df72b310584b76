#include "mirrorphase/dynamics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mirrorphase/errors.hpp"

namespace mirrorphase {

namespace {

using C = std::complex<double>;
using Mat2 = std::array<std::array<C, 2>, 2>;

Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

void require_a_equals_b(const DissipatorCoeffs& coeffs, const char* who) {
    if (coeffs.a != coeffs.b)
        throw std::invalid_argument(std::string(who) +
                                    ": specialized to the vacuum bath a == b");
}

DensityMatrix2 pure_initial_state(double theta) {
    const double c2 = std::cos(0.5 * theta);
    const double s2 = std::sin(0.5 * theta);
    DensityMatrix2 rho;
    rho.ee = c2 * c2;
    rho.gg = 1.0 - rho.ee;
    rho.eg = C(s2 * c2, 0.0);
    return rho;
}

}  // namespace

DensityMatrix2 rho_analytic(double phi, const AtomParams& params,
                            const DissipatorCoeffs& coeffs) {
    params.validate();
    require_a_equals_b(coeffs, "rho_analytic");
    if (!(phi >= 0.0)) throw std::invalid_argument("rho_analytic: phi must be >= 0");
    if (phi == 0.0) return pure_initial_state(params.theta);

    const double c2 = std::cos(0.5 * params.theta);
    const double s2 = std::sin(0.5 * params.theta);
    const double w4 = std::exp(-4.0 * coeffs.a * phi);
    const double w2 = std::exp(-2.0 * coeffs.a * phi);
    DensityMatrix2 rho;
    rho.ee = w4 * c2 * c2;
    rho.gg = 1.0 - rho.ee;
    rho.eg = (s2 * c2 * w2) * std::polar(1.0, -coeffs.omega_eff * phi);
    return rho;
}

EigenDecomp eigen_decompose(double phi, const AtomParams& params,
                            const DissipatorCoeffs& coeffs) {
    params.validate();
    require_a_equals_b(coeffs, "eigen_decompose");
    if (!(phi >= 0.0)) throw std::invalid_argument("eigen_decompose: phi must be >= 0");

    EigenDecomp d;
    if (phi == 0.0) {
        // Pure state: lambda_-(0) = 0 exactly, theta_tau(0) = pi - theta.
        d.rho3 = std::cos(params.theta);
        d.eta = 1.0;
        d.lambda_plus = 1.0;
        d.lambda_minus = 0.0;
        d.theta_tau = std::numbers::pi - params.theta;
        return d;
    }

    const double w4 = std::exp(-4.0 * coeffs.a * phi);
    const double cth = std::cos(params.theta);
    const double sth = std::sin(params.theta);
    d.rho3 = w4 * (1.0 + cth) - 1.0;
    d.eta = std::sqrt(d.rho3 * d.rho3 + w4 * sth * sth);
    d.lambda_plus = 0.5 * (1.0 + d.eta);
    d.lambda_minus = 0.5 * (1.0 - d.eta);
    if (d.eta < 1e-15) {
        // rho = identity/2, reachable only for sin(theta) = 0 at the crossing
        // instant e^{-4 a phi} = 1/2; the branch limit from phi- is theta_tau = pi.
        d.degenerate = true;
        d.theta_tau = std::numbers::pi;
        return d;
    }
    d.theta_tau = 2.0 * std::atan2(std::sqrt(std::max(d.eta + d.rho3, 0.0)),
                                   std::sqrt(std::max(d.eta - d.rho3, 0.0)));
    return d;
}

RhoTangent lindblad_rhs(const DensityMatrix2& state, const AtomParams& params,
                        const DissipatorCoeffs& coeffs) {
    (void)params;
    const C i(0.0, 1.0);
    static const Mat2 sigma[3] = {
        Mat2{{{C(0), C(1)}, {C(1), C(0)}}},
        Mat2{{{C(0), C(0, -1)}, {C(0, 1), C(0)}}},
        Mat2{{{C(1), C(0)}, {C(0), C(-1)}}},
    };

    const Mat2 rho{{{C(state.ee), state.eg}, {std::conj(state.eg), C(state.gg)}}};
    const KossakowskiMatrix k = kossakowski_matrix(coeffs);

    // -i (w/2) [sigma3, rho]
    Mat2 out{};
    const Mat2 hr = mul(sigma[2], rho);
    const Mat2 rh = mul(rho, sigma[2]);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out[r][c] = -i * (0.5 * coeffs.omega_eff) * (hr[r][c] - rh[r][c]);

    // (1/2) sum_ij a_ij (2 sigma_j rho sigma_i - sigma_i sigma_j rho - rho sigma_i sigma_j)
    for (int ii = 0; ii < 3; ++ii) {
        for (int jj = 0; jj < 3; ++jj) {
            const C aij = k(ii, jj);
            if (aij == C(0)) continue;
            const Mat2 jrho_i = mul(mul(sigma[jj], rho), sigma[ii]);
            const Mat2 ij = mul(sigma[ii], sigma[jj]);
            const Mat2 ij_rho = mul(ij, rho);
            const Mat2 rho_ij = mul(rho, ij);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    out[r][c] += 0.5 * aij *
                                 (2.0 * jrho_i[r][c] - ij_rho[r][c] - rho_ij[r][c]);
        }
    }

    return {out[0][0].real(), out[0][1], out[1][1].real()};
}

Trajectory evolve_numeric(const AtomParams& params, const DissipatorCoeffs& coeffs,
                          double phi_end, int steps) {
    params.validate();
    if (steps < 10) throw std::invalid_argument("evolve_numeric: steps must be >= 10");
    if (!(phi_end > 0.0)) throw std::invalid_argument("evolve_numeric: phi_end must be > 0");

    const double h = phi_end / steps;
    DensityMatrix2 y = pure_initial_state(params.theta);

    Trajectory traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    traj.push_back({0.0, y});

    auto axpy = [](const DensityMatrix2& s, double c, const RhoTangent& t) {
        return DensityMatrix2{s.ee + c * t.ee, s.eg + c * t.eg, s.gg + c * t.gg};
    };

    for (int k = 0; k < steps; ++k) {
        const RhoTangent k1 = lindblad_rhs(y, params, coeffs);
        const RhoTangent k2 = lindblad_rhs(axpy(y, 0.5 * h, k1), params, coeffs);
        const RhoTangent k3 = lindblad_rhs(axpy(y, 0.5 * h, k2), params, coeffs);
        const RhoTangent k4 = lindblad_rhs(axpy(y, h, k3), params, coeffs);
        y.ee += h / 6.0 * (k1.ee + 2.0 * k2.ee + 2.0 * k3.ee + k4.ee);
        y.eg += h / 6.0 * (k1.eg + 2.0 * k2.eg + 2.0 * k3.eg + k4.eg);
        y.gg += h / 6.0 * (k1.gg + 2.0 * k2.gg + 2.0 * k3.gg + k4.gg);

        const double phi = (k + 1) * h;
        if (y.det() < -1e-8 || y.ee < -1e-8 || y.gg < -1e-8)
            throw NumericalFailure("evolve_numeric: positivity violated", phi);
        traj.push_back({phi, y});
    }
    return traj;
}

Trajectory sample_analytic(const AtomParams& params, const DissipatorCoeffs& coeffs,
                           double phi_end, int points) {
    params.validate();
    if (points < 2) throw std::invalid_argument("sample_analytic: points must be >= 2");
    if (!(phi_end > 0.0)) throw std::invalid_argument("sample_analytic: phi_end must be > 0");

    const double h = phi_end / (points - 1);
    Trajectory traj;
    traj.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k)
        traj.push_back({k * h, rho_analytic(k * h, params, coeffs)});
    return traj;
}

}  // namespace mirrorphase
