import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from supgdirac import reference
from supgdirac.errors import DomainError
from supgdirac.physics import (
    SPEED_OF_LIGHT,
    SPEED_OF_LIGHT_CODATA2018,
    PhysicalParams,
    PotentialModel,
    calibrate_speed_of_light,
    exact_eigenvalue,
    exact_spectrum,
    max_relative_mismatch,
    nucleus_radius,
    potential,
)


def naive_shifted(params, n_r):
    g = 1 / params.c
    lam = params.m * params.c**2 / np.sqrt(
        1 + (params.z * g) ** 2 / (n_r - 1 + np.sqrt(params.kappa**2 - (params.z * g) ** 2)) ** 2)
    return lam - params.m * params.c**2


def test_ground_state_matches_published_after_calibration(calibrated_c):
    p = PhysicalParams(118, -2, calibrated_c)
    assert exact_eigenvalue(p, 1) == pytest.approx(-1829.630750908, rel=1e-10)
    assert exact_eigenvalue(p, 15) == pytest.approx(-27.80813459180, rel=1e-10)


def test_default_c_level_15_close():
    p = PhysicalParams(118, -2, SPEED_OF_LIGHT)
    assert exact_eigenvalue(p, 15) == pytest.approx(-27.80813459180, rel=5e-7)


def test_stable_form_agrees_with_naive_formula():
    for kappa in (-3, -1, 1, 4):
        p = PhysicalParams(92, kappa)
        for n_r in range(2, 8):
            assert exact_eigenvalue(p, n_r) == pytest.approx(naive_shifted(p, n_r), rel=1e-9)


def test_zero_coupling_limit():
    p = PhysicalParams(1, -1, c=1e6)
    assert abs(exact_eigenvalue(p, 1)) <= 1e-6 * p.rest_energy


def test_positive_kappa_starts_at_second_level(calibrated_c):
    p = PhysicalParams(118, 2, calibrated_c)
    got = exact_spectrum(p, 2)
    np.testing.assert_allclose(got, [-826.7683539069, -463.1183252634], rtol=1e-10)
    with pytest.raises(DomainError):
        exact_eigenvalue(p, 1)


def test_spectrum_count_and_order():
    e = exact_spectrum(PhysicalParams(50, -3), 5)
    assert e.shape == (5,)
    assert np.all(e < 0) and np.all(np.diff(e) > 0)


@pytest.mark.parametrize("bad", [dict(z=0, kappa=-1), dict(z=138, kappa=-1), dict(z=10, kappa=0),
                                 dict(z=10, kappa=-1, c=-1.0), dict(z=10, kappa=-1, m=0.0),
                                 dict(z=137, kappa=-1, c=100.0)])
def test_invalid_params(bad):
    with pytest.raises(DomainError):
        PhysicalParams(**bad)


def test_invalid_level_and_count():
    p = PhysicalParams(10, -1)
    with pytest.raises(DomainError):
        exact_eigenvalue(p, 0)
    with pytest.raises(DomainError):
        exact_spectrum(p, 0)


@settings(max_examples=60, deadline=None)
@given(z=st.integers(1, 137), k=st.integers(1, 6), n_r=st.integers(2, 40))
def test_mirror_symmetry_and_range(z, k, n_r):
    neg, pos = PhysicalParams(z, -k), PhysicalParams(z, k)
    assert exact_eigenvalue(neg, n_r) == exact_eigenvalue(pos, n_r)
    e = exact_eigenvalue(neg, n_r)
    assert -2 * neg.rest_energy < e < 0
    assert exact_eigenvalue(neg, n_r - 1) < e


# --- potentials ---------------------------------------------------------------------


def test_point_potential():
    assert potential(PotentialModel.point(), 118, 2.0) == -59.0
    with pytest.raises(DomainError):
        potential(PotentialModel.point(), 118, 0.0)


def test_uniform_sphere_centre_value_against_shell_integration():
    z, R = 118, 1.5e-4
    rho = 3 * z / (4 * np.pi * R**3)
    # potential energy at the centre: -integral of rho / r' over the ball
    oracle = -quad(lambda s: rho * 4 * np.pi * s, 0, R)[0]
    assert potential(PotentialModel.extended(R), z, 0.0) == pytest.approx(-1.5 * z / R, rel=1e-14)
    assert potential(PotentialModel.extended(R), z, 0.0) == pytest.approx(oracle, rel=1e-12)


def test_uniform_sphere_interior_against_shell_integration():
    z, R, r = 20, 2.0, 0.7
    rho = 3 * z / (4 * np.pi * R**3)
    enclosed = rho * 4 / 3 * np.pi * r**3
    outer = quad(lambda s: rho * 4 * np.pi * s, r, R)[0]
    assert potential(PotentialModel.extended(R), z, r) == pytest.approx(-(enclosed / r + outer), rel=1e-12)


def test_uniform_sphere_is_c1_and_above_point():
    z, R = 118, 1.5e-4
    model = PotentialModel.extended(R)
    assert potential(model, z, R) == pytest.approx(-z / R, rel=1e-14)
    d = 1e-9 * R
    left = (potential(model, z, R) - potential(model, z, R - d)) / d
    right = (potential(model, z, R + d) - potential(model, z, R)) / d
    assert left == pytest.approx(z / R**2, rel=1e-5)
    assert right == pytest.approx(z / R**2, rel=1e-5)
    r = np.linspace(1e-3 * R, R, 200)
    assert np.all(potential(model, z, r) >= potential(PotentialModel.point(), z, r))
    np.testing.assert_allclose(potential(model, z, [2 * R, 3 * R]), -z / np.array([2 * R, 3 * R]))


def test_extended_model_requires_radius():
    with pytest.raises(DomainError):
        PotentialModel.extended(0.0)


def test_nucleus_radius_og():
    R = nucleus_radius(294)
    assert R == pytest.approx(1.2 * 294 ** (1 / 3) * 1e-15 / 5.29177210903e-11)
    assert 1.4e-4 < R < 1.6e-4


# --- speed of light calibration ------------------------------------------------------


def test_calibration_reaches_published_digits(calibrated_c):
    assert 137.0359 < calibrated_c < 137.0361
    assert max_relative_mismatch(calibrated_c, 118, -2, reference.EXACT_KAPPA_M2) <= 1e-10
    assert max_relative_mismatch(calibrated_c, 118, 2, reference.EXACT_KAPPA_P2) <= 1e-10
    assert abs(calibrated_c - SPEED_OF_LIGHT_CODATA2018) < 1e-6


def test_calibration_recovers_synthetic_c():
    ref = exact_spectrum(PhysicalParams(100, -1, 137.03598), 10)
    c, mis = calibrate_speed_of_light(ref, 100, -1)
    assert c == pytest.approx(137.03598, abs=2e-7)
    assert mis < 1e-10
