"""Membrane resonator mechanics: modes, effective mass, stiffness and Q budgets."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from . import core
from .core import K_B
from .errors import DomainError, PhysicsWarning, ValidationError

# Catalogue thickness range for commercial SiN windows.
CATALOG_THICKNESS = (20e-9, 200e-9)
DEFAULT_STRESS = 62.4e6  # Pa; gives f11 ~ 1e5 Hz for the default 1 mm, 50 nm membrane
DEFAULT_MAX_LINEAR_AMPLITUDE = 0.18e-9
DEFAULT_Q_TABLE = {300.0: 1e6, 0.3: 1e7}


@dataclass(frozen=True)
class ModeIndex:
    m: int = 1
    n: int = 1

    def __post_init__(self):
        if int(self.m) != self.m or int(self.n) != self.n or self.m < 1 or self.n < 1:
            raise ValidationError(f"mode indices must be positive integers, got ({self.m}, {self.n})")


FUNDAMENTAL = ModeIndex(1, 1)


@dataclass(frozen=True)
class MembraneSpec:
    """Rectangular stressed SiN membrane.

    ``q_intrinsic`` maps temperature (K) to intrinsic Q. ``override_k`` and
    ``override_f0`` replace the geometry-derived fundamental-mode values with
    measured ones.
    """

    side_x: float = 1e-3
    side_y: float = 1e-3
    thickness: float = 50e-9
    density: float = core.RHO_SN_DEFAULT
    stress: float = DEFAULT_STRESS
    q_intrinsic: Mapping[float, float] = field(default_factory=lambda: dict(DEFAULT_Q_TABLE))
    override_k: Optional[float] = None
    override_f0: Optional[float] = None
    max_linear_amplitude: float = DEFAULT_MAX_LINEAR_AMPLITUDE

    def __post_init__(self):
        for name in ("side_x", "side_y", "thickness", "density", "stress", "max_linear_amplitude"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"{name} must be positive and finite, got {value!r}")
        if not self.q_intrinsic:
            raise ValidationError("q_intrinsic table is empty")
        for temp, q in self.q_intrinsic.items():
            if not temp > 0:
                raise ValidationError(f"q_intrinsic temperature must be positive, got {temp!r}")
            if not q >= 1:
                raise ValidationError(f"q_intrinsic values must be >= 1, got {q!r} at {temp} K")
        for name in ("override_k", "override_f0"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValidationError(f"{name} must be positive, got {value!r}")
        lo, hi = CATALOG_THICKNESS
        if not lo <= self.thickness <= hi:
            warnings.warn(
                f"thickness {self.thickness:g} m is outside the commercial 20-200 nm range",
                PhysicsWarning,
                stacklevel=3,
            )

    @property
    def physical_mass(self) -> float:
        return self.density * self.thickness * self.side_x * self.side_y

    def intrinsic_q(self, temperature: float) -> float:
        """Intrinsic Q at ``temperature``.

        log Q is interpolated linearly in log T between table entries and
        clamped outside the table.
        """
        temperature = core.si(temperature, core.TEMPERATURE, "temperature")
        if not temperature > 0:
            raise DomainError(f"temperature must be positive, got {temperature!r}")
        temps = sorted(self.q_intrinsic)
        if len(temps) == 1:
            return float(self.q_intrinsic[temps[0]])
        log_t = np.log([float(t) for t in temps])
        log_q = np.log([float(self.q_intrinsic[t]) for t in temps])
        return float(np.exp(np.interp(math.log(temperature), log_t, log_q)))


def _mode(mode):
    if mode is None:
        return FUNDAMENTAL
    if isinstance(mode, ModeIndex):
        return mode
    return ModeIndex(*mode)


def mode_frequency(spec: MembraneSpec, mode=FUNDAMENTAL) -> float:
    """Mode frequency f_mn (Hz) of a stretched rectangular membrane."""
    mode = _mode(mode)
    if spec.override_f0 is not None and mode == FUNDAMENTAL:
        return float(spec.override_f0)
    wave_speed = math.sqrt(spec.stress / spec.density)
    return 0.5 * wave_speed * math.hypot(mode.m / spec.side_x, mode.n / spec.side_y)


def effective_mass(spec: MembraneSpec, mode=FUNDAMENTAL) -> float:
    """Modal effective mass (kg), normalised to the antinode displacement.

    For a sinusoidal mode shape this is a quarter of the physical mass for
    every (m, n). When both ``override_k`` and ``override_f0`` are set the
    fundamental-mode mass is k / omega0**2 so the measured pair stays
    self-consistent.
    """
    mode = _mode(mode)
    if mode == FUNDAMENTAL and spec.override_k is not None and spec.override_f0 is not None:
        return spec.override_k / (2 * math.pi * spec.override_f0) ** 2
    return spec.physical_mass / 4.0


def spring_constant(spec: MembraneSpec, mode=FUNDAMENTAL) -> float:
    mode = _mode(mode)
    if spec.override_k is not None and mode == FUNDAMENTAL:
        return float(spec.override_k)
    omega = 2 * math.pi * mode_frequency(spec, mode)
    return effective_mass(spec, mode) * omega**2


@dataclass
class DampingBudget:
    """Named damping channels.

    Each channel is stored as an energy damping rate (1/s); Q values are
    converted with the budget's resonance frequency ``f0``.
    """

    f0: float
    rates: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.f0 > 0:
            raise ValidationError(f"f0 must be positive, got {self.f0!r}")
        for name, rate in self.rates.items():
            self._check_rate(name, rate)

    @property
    def omega0(self) -> float:
        return 2 * math.pi * self.f0

    @staticmethod
    def _check_rate(name, rate):
        if not rate >= 0:
            raise ValidationError(f"damping rate for {name!r} must be >= 0, got {rate!r}")

    def add_rate(self, name: str, gamma: float) -> "DampingBudget":
        self._check_rate(name, gamma)
        self.rates[name] = float(gamma)
        return self

    def add_q(self, name: str, q: float) -> "DampingBudget":
        if not q > 0:
            raise ValidationError(f"Q for {name!r} must be positive, got {q!r}")
        return self.add_rate(name, self.omega0 / q)

    def q(self, name: str) -> float:
        rate = self.rates[name]
        return math.inf if rate == 0 else self.omega0 / rate


@dataclass(frozen=True)
class CombinedQ:
    q_total: float
    gamma_total: float


def combine_q(budget: DampingBudget, f0: Optional[float] = None) -> CombinedQ:
    """Total Q from 1/Q_total = sum(1/Q_i), equivalently Gamma_total = sum(Gamma_i)."""
    if not budget.rates:
        raise ValidationError("damping budget has no channels")
    omega0 = 2 * math.pi * (budget.f0 if f0 is None else f0)
    gamma_total = math.fsum(budget.rates.values())
    q_total = math.inf if gamma_total == 0 else omega0 / gamma_total
    return CombinedQ(q_total=q_total, gamma_total=gamma_total)


def support_limited_q(mass_ratio: float, mount_q: float = 1.0) -> float:
    """Support-loss Q as support-to-membrane mass ratio times mount Q.

    A one-parameter caricature: a fully dissipative mount (``mount_q`` = 1)
    caps Q at the mass ratio.
    """
    if mass_ratio < 1 or mount_q < 1:
        raise DomainError("mass_ratio and mount_q must both be >= 1")
    return float(mass_ratio) * float(mount_q)


def thermal_rms_amplitude(k, T) -> float:
    """Equipartition rms displacement sqrt(k_B T / k) in metres."""
    k = core.si(k, core.STIFFNESS, "k")
    T = core.si(T, core.TEMPERATURE, "T")
    if not k > 0:
        raise DomainError(f"k must be positive, got {k!r}")
    if T < 0:
        raise DomainError(f"T must be >= 0, got {T!r}")
    return math.sqrt(K_B * T / k)


def validate_amplitude(a, spec: Optional[MembraneSpec] = None, *, warn: bool = True) -> str:
    """Return ``"linear"`` or ``"nonlinear-warning"`` for drive amplitude ``a``."""
    a = core.si(a, core.LENGTH, "amplitude")
    if a < 0:
        raise DomainError(f"amplitude must be >= 0, got {a!r}")
    limit = spec.max_linear_amplitude if spec is not None else DEFAULT_MAX_LINEAR_AMPLITUDE
    if a > limit:
        if warn:
            warnings.warn(
                f"amplitude {a:g} m exceeds the linear limit {limit:g} m",
                PhysicsWarning,
                stacklevel=2,
            )
        return "nonlinear-warning"
    return "linear"
