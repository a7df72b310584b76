#include "mirrorphase/phase.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "mirrorphase/constants.hpp"
#include "mirrorphase/errors.hpp"
#include "mirrorphase/quad.hpp"
#include "mirrorphase/spectral.hpp"

namespace mirrorphase {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_a_equals_b(const DissipatorCoeffs& coeffs, const char* who) {
    if (coeffs.a != coeffs.b)
        throw std::invalid_argument(std::string(who) +
                                    ": specialized to the vacuum bath a == b");
}

double geometric_part_of(double theta, double omega, double phi_end) {
    // -pi (1 - cos theta) per cycle, times omega and phi_end / 2pi
    return -0.5 * omega * (1.0 - std::cos(theta)) * phi_end;
}

}  // namespace

PhaseResult gp_integral(const AtomParams& params, const DissipatorCoeffs& coeffs,
                        double phi_end) {
    params.validate();
    require_a_equals_b(coeffs, "gp_integral");
    if (!(phi_end > 0.0)) throw std::invalid_argument("gp_integral: phi_end must be > 0");

    const double a = coeffs.a;
    const double omega = coeffs.omega_eff;
    const double cth = std::cos(params.theta);
    const double sth2 = std::sin(params.theta) * std::sin(params.theta);
    const double q = 1.0 + cth;

    // cos^2(theta_tau/2) = (eta - rho3)/(2 eta) in the decaying variables
    // w = e^{-4 a phi}; nothing here can overflow for any a*phi >= 0.
    auto integrand = [=](double phi) {
        const double w = std::exp(-4.0 * a * phi);
        const double rho3 = w * q - 1.0;
        const double eta = std::sqrt(rho3 * rho3 + w * sth2);
        return 0.5 * (1.0 - rho3 / eta);
    };

    QuadResult quad =
        integrate_adaptive(integrand, 0.0, phi_end, 1e-13, 1e-17 * phi_end);
    if (!quad.converged)
        quad = integrate_simpson(integrand, 0.0, phi_end, 1e-13, 1e-17 * phi_end);
    if (!quad.converged)
        throw NumericalFailure("gp_integral: quadrature failed to converge");

    const double total = -omega * quad.value;
    const double geo = geometric_part_of(params.theta, omega, phi_end);
    const double env = total - geo;
    return {geo + env, geo, env};
}

PhaseResult gp_closed_form(const AtomParams& params, const DissipatorCoeffs& coeffs,
                           double phi_end) {
    params.validate();
    require_a_equals_b(coeffs, "gp_closed_form");
    if (!(phi_end > 0.0))
        throw std::invalid_argument("gp_closed_form: phi_end must be > 0");

    using LD = long double;
    const LD a = coeffs.a;
    const LD omega = coeffs.omega_eff;
    const LD phi = phi_end;
    const LD cth = std::cos(params.theta);  // theta = pi gives exactly -1, so Q = 0
    const LD q = 1.0L + cth;

    const double geo = static_cast<double>(-0.5L * omega * (1.0L - cth) * phi);

    // Environment part with the -pi(1-cos theta) term removed symbolically:
    //   env = -omega ( phi Q/2 + L / (8a) ),
    //   L   = log1p(d1/n1(0)) + log1p(d2/n2(0)),
    // written in w = e^{-4 a phi} so e^{8 a phi} never appears; the
    // differences d1, d2 go through expm1 so small a*phi costs no digits.
    // Q = 0 (theta = pi) and a = 0 both collapse to env = 0, reproducing the
    // exact -omega*phi_end and unitary-limit shortcuts.
    double env = 0.0;
    if (a != 0.0L && q != 0.0L && cth == 1.0L) {
        // theta = 0: the antiderivative's first log vanishes identically and
        // the reduced integrand is a step, 0 before the population balance at
        // e^{-4 a phi} = 1/2 and 1 after it.
        const LD x = 4.0L * a * phi;
        if (x > static_cast<LD>(M_LN2))
            env = static_cast<double>(
                -omega * (phi - std::log(static_cast<LD>(2.0)) / (4.0L * a)));
    } else if (a != 0.0L && q != 0.0L) {
        const LD em1 = std::expm1(-4.0L * a * phi);  // w - 1
        const LD w = 1.0L + em1;
        const LD r = std::sqrt(1.0L + q * q * w * em1);  // S(phi) e^{-4 a phi}
        const LD d1 = q * q * em1 * (w / (r + 1.0L) - 0.5L);
        const LD n10 = 2.0L - 0.5L * q * q;
        const LD d2 = 2.0L * em1 * (q + q * q * w / (r + 1.0L));
        const LD n20 = q + 2.0L;
        const LD arg1 = d1 / n10;
        const LD arg2 = d2 / n20;
        if (!(arg1 > -1.0L) || !(arg2 > -1.0L))
            throw NumericalFailure(
                "gp_closed_form: antiderivative degenerates (eigenvalue crossing "
                "inside the horizon)",
                phi_end);
        const LD big_l = std::log1p(arg1) + std::log1p(arg2);
        env = static_cast<double>(-omega * (0.5L * phi * q + big_l / (8.0L * a)));
        if (!std::isfinite(env))
            throw NumericalFailure("gp_closed_form: overflow despite rescaling", phi_end);
    }
    return {geo + env, geo, env};
}

PhaseResult gp_first_order(const AtomParams& params, const Geometry& geom) {
    params.validate();
    double mod_sum;
    if (geom.is_free_space()) {
        mod_sum = params.alpha_sum();
    } else {
        const ModulationValues f = modulation(geom.u());
        mod_sum = params.alpha[0] * (1.0 - f.fx) + params.alpha[1] * (1.0 - f.fy) +
                  params.alpha[2] * (1.0 - f.fz);
    }
    const double cth = std::cos(params.theta);
    const double sth = std::sin(params.theta);
    const double pi = std::numbers::pi;
    const double geo = -pi * (1.0 - cth);
    const double env =
        -pi * pi * 0.5 * params.gamma_ratio * mod_sum * (2.0 + cth) * sth * sth;
    return {geo + env, geo, env};
}

double optimal_theta() {
    // Stationary point of (2 + cos t) sin^2 t: root of 3 cos^2 t + 4 cos t - 1
    // in (0, pi), bracketed bisection.
    auto g = [](double t) {
        const double c = std::cos(t);
        return 3.0 * c * c + 4.0 * c - 1.0;
    };
    double lo = 0.5, hi = 2.5;  // g(lo) > 0 > g(hi)
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double phase_difference(double z_m, double z0_m, const AtomParams& params,
                        double T_s) {
    params.validate();
    if (!(z_m > 0.0) || !(z0_m > 0.0))
        throw std::domain_error("phase_difference: distances must be > 0");
    if (!(T_s > 0.0)) throw std::domain_error("phase_difference: T must be > 0");

    const double phi_end = phi_from_time(T_s, params.omega0);
    auto env_at = [&](double z) {
        const Geometry geom = Geometry::from_distance(z, params.omega0);
        const DissipatorCoeffs coeffs = build_coeffs(params, geom);
        return gp_closed_form(params, coeffs, phi_end).environment_part;
    };
    // The geometric parts are identical at both distances (Omega = omega0) and
    // cancel symbolically; only environment parts are subtracted.
    return env_at(z0_m) - env_at(z_m);
}

std::vector<SweepRow> sweep_z(std::span<const double> z_grid_m, double z0_m,
                              const AtomParams& params, double T_s,
                              unsigned threads) {
    params.validate();
    if (z_grid_m.empty()) throw std::invalid_argument("sweep_z: empty grid");
    for (double z : z_grid_m)
        if (!(z > 0.0)) throw std::domain_error("sweep_z: grid distances must be > 0");

    const std::size_t n = z_grid_m.size();
    std::vector<SweepRow> rows(n);
    auto worker = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < n; i += stride)
            rows[i] = {z_grid_m[i], phase_difference(z_grid_m[i], z0_m, params, T_s)};
    };

    if (threads <= 1 || n < 2) {
        worker(0, 1);
    } else {
        const unsigned nt = std::min<unsigned>(threads, static_cast<unsigned>(n));
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker, t, nt);
        for (auto& th : pool) th.join();
    }
    return rows;
}

double nonradiative_ratio(double z_m, double beta_m3) {
    if (!(z_m > 0.0)) throw std::domain_error("nonradiative_ratio: z must be > 0");
    if (!(beta_m3 >= 0.0)) throw std::domain_error("nonradiative_ratio: beta must be >= 0");
    return beta_m3 / (z_m * z_m * z_m);
}

double gp_general(const Trajectory& traj, const DissipatorCoeffs& coeffs) {
    const std::size_t n = traj.size();
    if (n < 100)
        throw std::invalid_argument("gp_general: trajectory needs >= 100 points");
    if (traj.front().phi != 0.0)
        throw std::invalid_argument("gp_general: trajectory must start at phi = 0");
    if (std::abs(traj.front().state.purity() - 1.0) > 1e-9)
        throw std::invalid_argument("gp_general: initial state must be pure");

    const double h0 = traj[1].phi - traj[0].phi;
    bool uniform = true;
    for (std::size_t k = 1; k < n; ++k) {
        const double dh = traj[k].phi - traj[k - 1].phi;
        if (!(dh > 0.0))
            throw std::invalid_argument("gp_general: phi must be strictly increasing");
        if (std::abs(dh - h0) > 1e-9 * h0) uniform = false;
    }

    // lambda_+ eigenvector of each point in the smooth gauge v = (eg, d1)/N,
    // d1 = lambda_+ - ee kept cancellation-free through d(+)d(-) = |eg|^2.
    // The ground component stays real >= 0, so the coherence phase e^{-i w phi}
    // lives entirely in v1 and the gauge is continuous in phi.
    std::vector<std::complex<double>> v1(n);
    std::vector<double> v2(n), cos2_half(n);
    for (std::size_t k = 0; k < n; ++k) {
        const DensityMatrix2& s = traj[k].state;
        const double rho3 = s.ee - s.gg;
        const double eg2 = std::norm(s.eg);
        const double eta = std::sqrt(rho3 * rho3 + 4.0 * eg2);
        if (eta < 1e-12)
            throw DegeneracyError(
                "gp_general: eigenvalue crossing without a continuity hint",
                traj[k].phi);
        const double d_plus = 0.5 * (eta + rho3);   // lambda_+ - gg
        const double d_minus = 0.5 * (eta - rho3);  // lambda_+ - ee
        const double d1 = rho3 >= 0.0 ? eg2 / d_plus : d_minus;
        const double nrm = std::sqrt(eg2 + d1 * d1);
        if (nrm == 0.0) {
            v1[k] = {1.0, 0.0};  // diagonal excited-dominated state
            v2[k] = 0.0;
        } else {
            v1[k] = s.eg / nrm;
            v2[k] = d1 / nrm;
        }
        cos2_half[k] = v2[k] * v2[k];
    }

    // A crossing can also slip between samples (diagonal trajectories swap
    // branches with eta never small at the nodes); successive eigenvectors of
    // a resolved single branch overlap at ~1.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::complex<double> ov =
            std::conj(v1[k]) * v1[k + 1] + v2[k] * v2[k + 1];
        if (std::norm(ov) < 0.25)
            throw DegeneracyError(
                "gp_general: eigenvalue crossing without a continuity hint",
                traj[k + 1].phi);
    }

    // Connection <v|dv/dphi>: 4th-order centered differences inside (2nd-order
    // at the edges), then the trapezoid rule. The plain 2nd-order stencil
    // leaves a systematic (h^2/6) * integral(cos^2) phase deficit -- the
    // sin(h)/h of differencing e^{i w phi} -- which the 5-point stencil
    // removes to O(h^4).
    std::vector<std::complex<double>> conn(n);
    auto dv = [&](std::size_t k) -> std::pair<std::complex<double>, double> {
        if (uniform) {
            if (k >= 2 && k + 2 < n) {
                const double den = 12.0 * h0;
                return {(-v1[k + 2] + 8.0 * v1[k + 1] - 8.0 * v1[k - 1] + v1[k - 2]) / den,
                        (-v2[k + 2] + 8.0 * v2[k + 1] - 8.0 * v2[k - 1] + v2[k - 2]) / den};
            }
            if (k == 0)
                return {(-3.0 * v1[0] + 4.0 * v1[1] - v1[2]) / (2.0 * h0),
                        (-3.0 * v2[0] + 4.0 * v2[1] - v2[2]) / (2.0 * h0)};
            if (k == n - 1)
                return {(3.0 * v1[k] - 4.0 * v1[k - 1] + v1[k - 2]) / (2.0 * h0),
                        (3.0 * v2[k] - 4.0 * v2[k - 1] + v2[k - 2]) / (2.0 * h0)};
            return {(v1[k + 1] - v1[k - 1]) / (2.0 * h0),
                    (v2[k + 1] - v2[k - 1]) / (2.0 * h0)};
        }
        if (k == 0)
            return {(v1[1] - v1[0]) / (traj[1].phi - traj[0].phi),
                    (v2[1] - v2[0]) / (traj[1].phi - traj[0].phi)};
        if (k == n - 1)
            return {(v1[k] - v1[k - 1]) / (traj[k].phi - traj[k - 1].phi),
                    (v2[k] - v2[k - 1]) / (traj[k].phi - traj[k - 1].phi)};
        const double den = traj[k + 1].phi - traj[k - 1].phi;
        return {(v1[k + 1] - v1[k - 1]) / den, (v2[k + 1] - v2[k - 1]) / den};
    };
    for (std::size_t k = 0; k < n; ++k) {
        const auto [d1c, d2r] = dv(k);
        conn[k] = std::conj(v1[k]) * d1c + v2[k] * d2r;
    }

    long double conn_im = 0.0L, reduced = 0.0L;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const long double hk = traj[k + 1].phi - traj[k].phi;
        conn_im += 0.5L * hk * (conn[k].imag() + conn[k + 1].imag());
        reduced += 0.5L * hk * (cos2_half[k] + cos2_half[k + 1]);
    }

    // gamma = arg( sqrt(l+(0) l+(T)) <v0|vN> e^{-int conn} ); the sqrt and
    // e^{-Re int} factors are real positive and drop out of the argument, so
    // the phase is arg<v0|vN> - Im(int conn), unwrapped by the 2 pi multiple
    // nearest the reduced-integral estimate.
    const std::complex<double> overlap =
        std::conj(v1[0]) * v1[n - 1] + v2[0] * v2[n - 1];
    const double candidate = std::arg(overlap) - static_cast<double>(conn_im);
    const double estimate =
        -coeffs.omega_eff * static_cast<double>(reduced);
    return candidate + two_pi * std::round((estimate - candidate) / two_pi);
}

}  // namespace mirrorphase
