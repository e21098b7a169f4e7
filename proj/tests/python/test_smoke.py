import math

import numpy as np
import pytest

import dickeforce as df


def test_single_atom_series():
    f_dip, f_diss, log_d = df.series(1, 1.0, 1.5)
    assert f_dip == pytest.approx(1.5 / 6.5, rel=1e-14)
    assert f_diss == pytest.approx(1.0 / 6.5, rel=1e-14)
    assert math.exp(log_d) == pytest.approx(2.0 + 2.0 / 2.25)


def test_series_matches_oracle():
    ga, gt = (0.8, 0.0, -0.35), (0.15, 0.4, 1.1)
    s = df.forces(3, 1.0, 1.5, ga, gt, theta=0.7)
    o = df.forces(3, 1.0, 1.5, ga, gt, theta=0.7, route="oracle")
    np.testing.assert_allclose(s["dipole"], o["dipole"], rtol=1e-8)
    np.testing.assert_allclose(s["dissipative"], o["dissipative"], rtol=1e-8)


def test_steady_state_is_density_matrix():
    rho = df.steady_state(4, 0.5, 1.2)
    assert rho.shape == (5, 5)
    assert np.trace(rho).real == pytest.approx(1.0)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-10)
    assert np.linalg.eigvalsh(rho).min() > -1e-9


def test_operators_commutator():
    pi12, pi21, pi3 = df.collective_operators(3)
    np.testing.assert_allclose(pi21 @ pi12 - pi12 @ pi21, 2 * pi3, atol=1e-12)


def test_fig1_and_mean_field():
    rows = np.array(df.fig1(n_max=50))
    assert rows.shape == (50, 3)
    assert np.all((rows[:, 2] > 0) & (rows[:, 2] < 1))
    drive = df.ReducedDrive(1.0, 2.0)
    run = df.evolve(drive)
    assert run["converged"]
    dip, diss = df.steady_observables(drive)
    assert run["dipole_per_grad_mu"] == pytest.approx(dip, rel=1e-6)
    assert run["diss_per_grad_theta"] == pytest.approx(diss, rel=1e-6)
    assert df.torque(df.ReducedDrive(2.0, 0.0), 1, 10) == pytest.approx(50.0)


def test_beams_and_errors():
    fields = df.beam_fields("bessel", (4.0, 0.3, 0.0), l=0, k_perp=0.1)
    assert fields["phase_gradient"][2] == pytest.approx(0.995)
    with pytest.raises(df.SingularityError):
        df.beam_fields("lg", (0.0, 0.0, 0.0), l=1)
    with pytest.raises(ValueError):
        df.series(0, 1.0, 1.5)


def test_validate():
    assert all(s["passed"] for s in df.validate(3))
