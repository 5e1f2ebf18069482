"""Small-signal capacitive readout estimates."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from . import core
from .errors import DomainError, GeometryError, PhysicsWarning


@dataclass(frozen=True)
class CapacitiveReadout:
    """Parallel-plate pickup behind the metallised membrane."""

    gap: float = 1e-4
    bias_voltage: float = 1.0

    def __post_init__(self):
        if not self.gap > 0:
            raise GeometryError(f"gap must be positive, got {self.gap!r}")
        if not self.bias_voltage >= 0:
            raise DomainError(f"bias voltage must be >= 0, got {self.bias_voltage!r}")

    def signal(self, displacement: float) -> float:
        return capacitive_signal_voltage(self.bias_voltage, capacitive_fractional_change(displacement, self.gap))


def capacitive_fractional_change(displacement, gap) -> float:
    """dC/C = dx / gap for a parallel-plate capacitor."""
    displacement = core.si(displacement, core.LENGTH, "displacement")
    gap = core.si(gap, core.LENGTH, "gap")
    if not gap > 0:
        raise GeometryError(f"gap must be positive, got {gap!r}")
    if displacement < 0:
        raise DomainError(f"displacement must be >= 0, got {displacement!r}")
    if displacement >= gap:
        raise GeometryError(f"displacement {displacement:g} m closes the {gap:g} m gap")
    if displacement > gap / 100:
        warnings.warn("displacement exceeds 1% of the gap; small-signal model is inaccurate", PhysicsWarning, stacklevel=2)
    return displacement / gap


def capacitive_signal_voltage(bias, frac_change) -> float:
    """Signal amplitude bias * dC/C (V) for an ideal charge-divider readout."""
    bias = core.si(bias, core.VOLTAGE, "bias")
    if bias < 0:
        raise DomainError(f"bias must be >= 0, got {bias!r}")
    return bias * frac_change


def cryogenic_requirement_factor(T_hot, T_cold) -> float:
    """Ratio of thermal rms displacements, sqrt(T_hot / T_cold)."""
    T_hot = core.si(T_hot, core.TEMPERATURE, "T_hot")
    T_cold = core.si(T_cold, core.TEMPERATURE, "T_cold")
    if not (T_hot > 0 and T_cold > 0):
        raise DomainError("temperatures must be positive")
    return math.sqrt(T_hot / T_cold)
