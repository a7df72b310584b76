"""Smoke tests for the python module against frozen library behavior."""

import math

import mirrorphase as mp


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    p = mp.AtomParams(omega0=3e9, gamma_ratio=1e-6, theta=math.pi / 2)
    free = mp.Geometry.free_space()
    assert free.is_free_space

    c = mp.build_coeffs(p, free)
    assert c.a == c.b
    assert close(c.a, 2.5e-7, 1e-18)

    assert close(mp.mod_fx(1e-8), 1.0, 1e-12)
    assert close(mp.mod_fz(1e-8), -1.0, 1e-12)
    assert mp.spectral_density(-1.0, free, p) == 0.0

    r = mp.gp_closed_form(p, c, 2 * math.pi)
    assert close(r.environment_part, -math.pi**2 * 1e-6, 1e-10)
    assert r.total == r.geometric_part + r.environment_part

    assert close(mp.optimal_theta(), 1.354, 1e-3)
    assert mp.nonradiative_ratio(1e-6, 1e-24) == 1e-6

    rows = mp.sweep_z([1e-6, 1e-5, 1e-4], 1e-6, p, 1e-3)
    assert rows[0].delta_rad == 0.0
    assert rows[2].delta_rad >= rows[1].delta_rad >= 0.0

    traj = mp.evolve_numeric(p, c, 2 * math.pi, 200)
    assert close(traj[0].state.purity(), 1.0, 1e-12)
    assert close(traj[-1].state.trace(), 1.0, 1e-10)

    sampled = mp.sample_analytic(p, c, 2 * math.pi, 10001)
    gg = mp.gp_general(sampled, c)
    qi = mp.gp_integral(p, c, 2 * math.pi)
    assert close(gg, qi.total, 1e-6)

    try:
        mp.evolve_numeric(p, c, 2 * math.pi, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("steps < 10 must raise")

    print("python smoke: ok")


if __name__ == "__main__":
    main()
