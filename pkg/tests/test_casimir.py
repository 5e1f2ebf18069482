import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from membrane_kit import casimir
from membrane_kit.casimir import SpherePlaneGeometry
from membrane_kit.errors import DomainError, PhysicsWarning

R = st.floats(min_value=1e-5, max_value=1.0)
T = st.floats(min_value=1e-3, max_value=1e3)
D = st.floats(min_value=1e-9, max_value=1e-2)


def test_thermal_example():
    assert casimir.thermal_sphere_plane(1e-2, 300, 26e-6) == pytest.approx(7.3526e-14, rel=1e-4)


def test_zero_temperature_example():
    assert casimir.zero_temp_sphere_plane(1e-2, 0.5e-6) == pytest.approx(2.1784e-10, rel=1e-4)


def test_crossing_exists():
    d_cross = math.pi**3 * 1.0545718176461565e-34 * 299792458.0 / (360 * 1.2 * 1.380649e-23 * 300)
    assert d_cross == pytest.approx(5.478e-7, rel=1e-3)
    assert casimir.zero_temp_sphere_plane(1e-2, d_cross) == pytest.approx(
        casimir.thermal_sphere_plane(1e-2, 300, d_cross), rel=1e-12
    )


def test_plane_pressure():
    assert casimir.thermal_plane_plane_pressure(300, 10e-6) == pytest.approx(1.981e-7, rel=1e-3)
    p = casimir.thermal_plane_plane_pressure(300, 10e-6)
    assert casimir.thermal_plane_plane_pressure(600, 10e-6) == pytest.approx(2 * p, rel=1e-15)
    assert casimir.thermal_plane_plane_pressure(300, 20e-6) == pytest.approx(p / 8, rel=1e-15)


def test_plane_pressure_helium_half():
    assert casimir.thermal_plane_plane_pressure(0.3, 1e-5, "helium") == pytest.approx(
        0.5 * casimir.thermal_plane_plane_pressure(0.3, 1e-5), rel=1e-15
    )


def test_phonon_examples():
    assert casimir.phonon_thermal_sphere_plane(1e-2, 0.3, 10e-6) == pytest.approx(2.4852e-16, rel=1e-4)
    assert casimir.phonon_thermal_sphere_plane(1e-2, 0.0, 10e-6) == 0.0


def test_phonon_zero_t_suppression():
    ratio = casimir.phonon_zero_temp_suppression()
    assert ratio == pytest.approx(7.905e-7, rel=1e-3)
    assert ratio * 299792458.0 == pytest.approx(237.0, rel=1e-15)


@given(R, T, D)
def test_phonon_is_half(r, t, d):
    assert casimir.phonon_thermal_sphere_plane(r, t, d) == 0.5 * casimir.thermal_sphere_plane(r, t, d)


@given(R, T, D, st.floats(min_value=1.001, max_value=100))
def test_forces_decrease_with_distance(r, t, d, f):
    assert casimir.thermal_sphere_plane(r, t, d * f) < casimir.thermal_sphere_plane(r, t, d)
    assert casimir.zero_temp_sphere_plane(r, d * f) < casimir.zero_temp_sphere_plane(r, d)


@given(R, T, D)
def test_scaling(r, t, d):
    f = casimir.thermal_sphere_plane(r, t, d)
    assert casimir.thermal_sphere_plane(r, t, 2 * d) == pytest.approx(f / 4, rel=1e-14)
    assert casimir.zero_temp_sphere_plane(r, 2 * d) == pytest.approx(casimir.zero_temp_sphere_plane(r, d) / 8, rel=1e-14)
    assert casimir.thermal_sphere_plane(2 * r, t, d) == pytest.approx(2 * f, rel=1e-14)


def test_pfa_distance_exponent():
    ds = np.geomspace(1e-6, 1e-5, 8)

    def pfa_force(d):
        # x = d / u maps [d, inf) onto (0, 1]
        integrand = lambda u: casimir.thermal_plane_plane_pressure(300, d / u) * d / u**2 if u > 0 else 0.0
        return 2 * math.pi * 1e-2 * integrate.quad(integrand, 0, 1, epsabs=0, epsrel=1e-12)[0]

    forces = [pfa_force(d) for d in ds]
    slope = np.polyfit(np.log(ds), np.log(forces), 1)[0]
    assert slope == pytest.approx(-2.0, abs=1e-6)
    # the PFA coefficient of the integrated pressure is zeta(3)/8, not 1.2
    ratio = forces[0] / casimir.thermal_sphere_plane(1e-2, 300, ds[0], "ideal-metal-pfa")
    assert ratio == pytest.approx(1.0, rel=1e-8)


def test_domain_errors():
    with pytest.raises(DomainError):
        casimir.thermal_sphere_plane(1e-2, 300, 0)
    with pytest.raises(DomainError):
        casimir.zero_temp_sphere_plane(-1, 1e-6)


def test_regime_report():
    geom = SpherePlaneGeometry(1e-2, 26e-6)
    report = casimir.regime_report(geom, 300)
    assert report.crossover_length == pytest.approx(7.633e-6, rel=1e-3)
    assert report.dominant == "thermal"
    assert report.force_phonon is None
    near = casimir.regime_report(SpherePlaneGeometry(1e-2, 0.1e-6), 300)
    assert near.dominant == "zero-temperature"
    he = casimir.regime_report(SpherePlaneGeometry(1e-2, 10e-6), 0.3, medium="helium")
    assert he.force_phonon == pytest.approx(2.4852e-16, rel=1e-4)


def test_geometry_warnings():
    with pytest.warns(PhysicsWarning):
        casimir.regime_report(SpherePlaneGeometry(1e-2, 1e-3), 300)
    with pytest.warns(PhysicsWarning):
        casimir.regime_report(SpherePlaneGeometry(1e-2, 10e-6, conducting_spot_diameter=1e-3), 300)
    with pytest.warns(PhysicsWarning):
        casimir.regime_report(SpherePlaneGeometry(1e-2, 10e-6, film_thickness=20e-9), 300)
    with warnings.catch_warnings():
        warnings.simplefilter("error", PhysicsWarning)
        casimir.regime_report(SpherePlaneGeometry(1e-2, 10e-6, 3e-3, 100e-9), 300)
