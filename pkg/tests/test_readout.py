import pytest
from hypothesis import given, strategies as st

from membrane_kit import readout
from membrane_kit.errors import GeometryError, PhysicsWarning
from membrane_kit.readout import CapacitiveReadout


def test_fractional_change_examples():
    assert readout.capacitive_fractional_change(0.01e-9, 1e-4) == pytest.approx(1e-7, rel=1e-12)
    assert readout.capacitive_fractional_change(0.0, 1e-4) == 0.0
    assert readout.capacitive_fractional_change(0.02e-9, 1e-4) == pytest.approx(2e-7, rel=1e-12)


def test_fractional_change_guards():
    with pytest.raises(GeometryError):
        readout.capacitive_fractional_change(1e-4, 1e-4)
    with pytest.warns(PhysicsWarning):
        readout.capacitive_fractional_change(2e-6, 1e-4)


def test_signal_voltage_examples():
    assert readout.capacitive_signal_voltage(1.0, 1e-7) == pytest.approx(1e-7)
    assert readout.capacitive_signal_voltage(1.0, 1e-5) == pytest.approx(1e-5)
    assert readout.capacitive_signal_voltage(0.0, 1e-7) == 0.0


def test_cryogenic_factor():
    assert readout.cryogenic_requirement_factor(300, 0.3) == pytest.approx(31.6228, rel=1e-5)
    assert readout.cryogenic_requirement_factor(5, 5) == 1.0
    assert readout.cryogenic_requirement_factor(20, 5) == 2.0


@given(st.floats(min_value=0, max_value=9e-7), st.floats(min_value=0.01, max_value=100))
def test_composition_linear(x, bias):
    ro = CapacitiveReadout(gap=1e-4, bias_voltage=bias)
    assert ro.signal(x) == pytest.approx(bias / 1e-4 * x, rel=1e-12, abs=1e-300)
