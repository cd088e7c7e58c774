import math

import numpy as np
import pytest

import stratwave as sw

P = sw.PhysicalParams(g=9.81, f=0.7, N=1.3)


def test_omega_limits():
    assert sw.omega(1.0, 0.0, P) == pytest.approx(P.N, abs=1e-15)
    assert sw.omega(0.0, 1.0, P) == pytest.approx(P.f, abs=1e-15)
    assert sw.omega(3.0, 4.0, sw.PhysicalParams(9.81, 1.0, 2.0)) == pytest.approx(math.sqrt(52 / 25), abs=1e-15)


def test_invalid_params_raise():
    with pytest.raises(sw.Error):
        sw.PhysicalParams(g=9.81, f=0.0, N=0.0)


def test_plane_wave_one_period():
    T = 2 * math.pi / sw.omega(1.0, 1.0, P)
    s0 = sw.exact_sample("plane_wave", 0.0, P, nx=32, nz=32)
    out = sw.simulate(s0["v"], s0["rho"], s0["psi"], P, dt=T / 200, n_steps=200)
    exact = sw.exact_sample("plane_wave", out["t"], P, nx=32, nz=32)
    for key in ("v", "rho", "psi"):
        assert np.max(np.abs(out[key] - exact[key])) < 1e-6
    energies = [row[3] for row in out["invariants"]]
    assert abs(energies[-1] - energies[0]) < 1e-8 * energies[0]


def test_rhs_shapes_and_zero_state():
    z = np.zeros((16, 8))
    r = sw.rhs(z, z, z, P)
    assert r["dv_dt"].shape == (16, 8)
    assert not np.any(r["dzeta_dt"])


def test_divergence_free_on_random_state():
    s = sw.random_state(32, 32, seed=3)
    for vec in ("v", "rho", "energy"):
        residual, scale = sw.divergence_check(vec, s["v"], s["rho"], s["psi"], P)
        assert np.max(np.abs(residual)) <= 1e-10 * scale


def test_theta_vanishes():
    s = sw.random_state(32, 32, seed=5)
    value, scale = sw.theta_under_substitution(s["v"], s["rho"], s["psi"], P)
    assert value <= 1e-11 * scale


def test_energy_is_not_a_divergence():
    is_div, rel = sw.is_divergence_energy(P, n=32, seed=2)
    assert not is_div and rel > 1e-2


def test_exact_residuals():
    for family in ("lorentzian", "gaussian", "invariant"):
        assert sw.pde_residual(family, 0.4, 0.3, -1.2, P, k=1.0, m=2.0) < 1e-11


def test_verify_adjoint_passes():
    lines = sw.verify("adjoint", 1)
    assert lines and all(line.startswith("PASS") for line in lines)


def test_snapshot_round_trip(tmp_path):
    s = sw.random_state(16, 16, seed=1)
    path = str(tmp_path / "s.bin")
    sw.write_snapshot(path, s["v"], s["rho"], s["psi"], t=0.25)
    back = sw.read_snapshot(path)
    assert back["t"] == 0.25
    assert np.array_equal(back["psi"], s["psi"])


def test_shape_mismatch_raises():
    with pytest.raises(sw.Error):
        sw.rhs(np.zeros((16, 16)), np.zeros((16, 8)), np.zeros((16, 16)), P)
