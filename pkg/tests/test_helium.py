import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from membrane_kit import helium
from membrane_kit.core import M3_BARE
from membrane_kit.errors import DomainError, MediumInvalidError, PhysicsWarning
from membrane_kit.helium import He3Mass, HeliumEnvironment

W0 = 2 * math.pi * 1e5


def test_phonon_rate_example():
    assert helium.phonon_damping_rate(0.03) == pytest.approx(4.0837e-3, rel=1e-4)


def test_phonon_rate_scaling():
    assert helium.phonon_damping_rate(0.04) == pytest.approx(16 * helium.phonon_damping_rate(0.02), rel=1e-13)
    assert helium.phonon_damping_rate(0.0) == 0.0


def test_phonon_exponent():
    temps = np.geomspace(5e-3, 90e-3, 30)
    rates = [helium.phonon_damping_rate(t) for t in temps]
    assert np.polyfit(np.log(temps), np.log(rates), 1)[0] == pytest.approx(4.0, abs=0.01)


def test_phonon_validity_bands():
    with pytest.warns(PhysicsWarning):
        helium.phonon_damping_rate(0.2)
    with pytest.raises(MediumInvalidError):
        helium.phonon_damping_rate(0.6)


def test_phonon_limited_q():
    assert helium.phonon_limited_q(W0, 0.03) == pytest.approx(1.5386e8, rel=1e-4)
    assert helium.phonon_limited_q(W0, 0.0) == math.inf
    assert helium.phonon_limited_q(W0, 0.02) / helium.phonon_limited_q(W0, 0.04) == pytest.approx(16, rel=1e-12)


def test_phonon_q_temperature():
    t = helium.phonon_q_temperature(1e7, W0)
    assert t == pytest.approx(59.42e-3, rel=1e-3)
    assert helium.phonon_limited_q(W0, t) == pytest.approx(1e7, rel=1e-12)


def test_he3_rate_example():
    assert helium.he3_damping_rate(0.03, 1e-10) == pytest.approx(3.8804e-3, rel=1e-4)
    assert helium.he3_damping_rate(0.03, 0.0) == 0.0
    assert helium.he3_damping_rate(0.08, 1e-10) == pytest.approx(2 * helium.he3_damping_rate(0.02, 1e-10), rel=1e-13)


def test_he3_exponents():
    temps = np.geomspace(5e-3, 90e-3, 30)
    rates = [helium.he3_damping_rate(t, 1e-10) for t in temps]
    assert np.polyfit(np.log(temps), np.log(rates), 1)[0] == pytest.approx(0.5, abs=0.01)


@given(st.floats(min_value=1e-12, max_value=1e-3), st.floats(min_value=1.0, max_value=1e3))
def test_he3_linear_in_x3(x3, f):
    f = min(f, 1 / x3)
    a = helium.he3_damping_rate(0.03, x3)
    assert helium.he3_damping_rate(0.03, x3 * f) == pytest.approx(a * f, rel=1e-13)


def test_he3_phonon_parity_bracket():
    temps = np.geomspace(10e-3, 99e-3, 50)
    ratios = [helium.he3_damping_rate(t, 1e-10) / helium.phonon_damping_rate(t) for t in temps]
    assert any(0.1 <= r <= 10 for r in ratios)


def test_effective_mass():
    assert He3Mass().effective_m3_star == 2.2 * M3_BARE
    assert M3_BARE == pytest.approx(5.00823e-27, rel=1e-5)


def test_environment_validation():
    with pytest.raises(MediumInvalidError):
        HeliumEnvironment(0.7)
    with pytest.raises(DomainError):
        HeliumEnvironment(0.03, he3_fraction=2.0)
    assert HeliumEnvironment(0.03, 1e-10).he3_density == pytest.approx(2.1816e18, rel=1e-4)


@given(st.floats(min_value=5e-3, max_value=0.09), st.floats(min_value=1e-12, max_value=1e-6))
def test_concentration_roundtrip(T, x3):
    g_int = 2 * math.pi * 1e5 / 1e7
    measured = g_int + helium.phonon_damping_rate(T) + helium.he3_damping_rate(T, x3)
    est = helium.infer_he3_concentration(measured, T, gamma_intrinsic=g_int)
    assert not est.below_floor
    # subtraction of the background costs relative precision in proportion to its size
    tol = 1e-10 + 4e-16 * measured / helium.he3_damping_rate(T, x3)
    assert est.x3 == pytest.approx(x3, rel=tol)


def test_concentration_examples():
    T, g_int = 0.03, 1e-3
    bg = g_int + helium.phonon_damping_rate(T)
    est = helium.infer_he3_concentration(bg + helium.he3_damping_rate(T, 1e-10), T, gamma_intrinsic=g_int)
    assert est.x3 == pytest.approx(1e-10, rel=1e-10)
    est2 = helium.infer_he3_concentration(bg + 2 * helium.he3_damping_rate(T, 1e-10), T, gamma_intrinsic=g_int)
    assert est2.x3 == pytest.approx(2e-10, rel=1e-10)
    floor = helium.infer_he3_concentration(bg, T, gamma_intrinsic=g_int)
    assert floor.below_floor
    assert floor.x3 > 0


def test_thermal_wavelength():
    assert helium.thermal_wavelength_he3(0.3) == pytest.approx(1.2374e-9, rel=1e-4)
    assert helium.thermal_wavelength_he3(1.2) == pytest.approx(helium.thermal_wavelength_he3(0.3) / 2, rel=1e-14)
    t14 = helium.thermal_wavelength_temperature(14e-9)
    assert t14 == pytest.approx(2.3436e-3, rel=1e-4)
    assert helium.thermal_wavelength_he3(t14) == pytest.approx(14e-9, rel=1e-13)
    with pytest.raises(DomainError):
        helium.thermal_wavelength_he3(0)


@pytest.mark.parametrize("a, verdict", [(0.1e-9, "valid"), (0.0, "valid"), (0.2e-9, "invalid")])
def test_landau_guard(a, verdict):
    assert helium.landau_velocity_guard(a, W0) == verdict


def test_landau_guard_far_below_landau_velocity():
    assert helium.MAX_MEMBRANE_VELOCITY < 1e-5 * helium.LANDAU_VELOCITY
