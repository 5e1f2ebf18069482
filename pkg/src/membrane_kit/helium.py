"""Membrane damping in superfluid 4He: phonon scattering and 3He collisions."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from . import core
from .core import C_PH, H, K_B, M3_BARE, N4
from .errors import DomainError, MediumInvalidError, PhysicsWarning

PHONON_ONLY_LIMIT = 0.6  # K; above this rotons matter
PHONON_ESTIMATE_LIMIT = 0.1  # K; damping formula is an estimate below this
M3_ENHANCEMENT = 2.2
M3_EFFECTIVE = M3_ENHANCEMENT * M3_BARE
MAX_MEMBRANE_VELOCITY = 1e-4  # m/s
LANDAU_VELOCITY = 60.0  # m/s


@dataclass(frozen=True)
class HeliumEnvironment:
    temperature: float
    he3_fraction: float = 0.0
    medium_valid_below: float = PHONON_ONLY_LIMIT

    def __post_init__(self):
        if not self.temperature > 0:
            raise DomainError(f"temperature must be positive, got {self.temperature!r}")
        if not 0 <= self.he3_fraction <= 1:
            raise DomainError(f"he3_fraction must lie in [0, 1], got {self.he3_fraction!r}")
        if self.temperature >= self.medium_valid_below:
            raise MediumInvalidError(
                f"T = {self.temperature:g} K: superfluid phonon model requires T < {self.medium_valid_below:g} K"
            )

    @property
    def he3_density(self) -> float:
        return self.he3_fraction * N4


@dataclass(frozen=True)
class He3Mass:
    bare_m3: float = M3_BARE

    @property
    def effective_m3_star(self) -> float:
        return M3_ENHANCEMENT * self.bare_m3


def check_temperature(T: float, limit: float = PHONON_ONLY_LIMIT, warn: bool = True) -> None:
    if not T >= 0:
        raise DomainError(f"T must be >= 0, got {T!r}")
    if T >= limit:
        raise MediumInvalidError(f"T = {T:g} K: phonon-only superfluid model requires T < {limit:g} K")
    if warn and T >= PHONON_ESTIMATE_LIMIT:
        warnings.warn(
            f"T = {T:g} K >= {PHONON_ESTIMATE_LIMIT} K: helium damping rates are rough estimates here",
            PhysicsWarning,
            stacklevel=3,
        )


def _membrane(rho_sn, t):
    rho_sn = core.si(rho_sn, core.DENSITY, "rho_sn")
    t = core.si(t, core.LENGTH, "t")
    if not (rho_sn > 0 and t > 0):
        raise DomainError("rho_sn and t must be positive")
    return rho_sn, t


def phonon_damping_rate(T, rho_sn=core.RHO_SN_DEFAULT, t=50e-9, *, warn: bool = True) -> float:
    """Energy damping rate (1/s) from phonon reflection off the membrane.

    Gamma = 2 pi^2 (k_B T)^4 / (rho_SN t h^3 c_ph^4).
    """
    T = core.si(T, core.TEMPERATURE, "T")
    rho_sn, t = _membrane(rho_sn, t)
    check_temperature(T, warn=warn)
    return 2 * math.pi**2 * (K_B * T) ** 4 / (rho_sn * t * H**3 * C_PH**4)


def phonon_limited_q(omega0, T, rho_sn=core.RHO_SN_DEFAULT, t=50e-9, *, warn: bool = True) -> float:
    omega0 = core.si(omega0, core.FREQUENCY, "omega0")
    gamma = phonon_damping_rate(T, rho_sn, t, warn=warn)
    return math.inf if gamma == 0 else omega0 / gamma


def phonon_q_temperature(q_target, omega0, rho_sn=core.RHO_SN_DEFAULT, t=50e-9) -> float:
    """Temperature (K) at which the phonon-limited Q equals ``q_target``."""
    rho_sn, t = _membrane(rho_sn, t)
    omega0 = core.si(omega0, core.FREQUENCY, "omega0")
    gamma = omega0 / q_target
    return (gamma * rho_sn * t * H**3 * C_PH**4 / (2 * math.pi**2)) ** 0.25 / K_B


def he3_damping_rate(T, x3, rho_sn=core.RHO_SN_DEFAULT, t=50e-9, *, warn: bool = True) -> float:
    """Energy damping rate (1/s) from 3He quasiparticle collisions.

    Gamma = (pi 3^(3/2) / 4) sqrt(m3* k_B T) N3 / (rho_SN t), with
    N3 = x3 n4 and the effective mass m3* = 2.2 m3.
    """
    T = core.si(T, core.TEMPERATURE, "T")
    rho_sn, t = _membrane(rho_sn, t)
    if not 0 <= x3 <= 1:
        raise DomainError(f"x3 must lie in [0, 1], got {x3!r}")
    check_temperature(T, warn=warn)
    n3 = x3 * N4
    return math.pi * 3**1.5 / 4 * math.sqrt(M3_EFFECTIVE * K_B * T) * n3 / (rho_sn * t)


@dataclass(frozen=True)
class ConcentrationEstimate:
    """Result of inverting a measured damping rate for the 3He fraction.

    When the residual rate is not positive, ``below_floor`` is set and
    ``x3`` is an upper bound: the fraction whose rate equals ``floor_rate``.
    """

    x3: float
    residual_rate: float
    below_floor: bool
    background_rate: float


def infer_he3_concentration(
    gamma_measured,
    T,
    gamma_intrinsic=0.0,
    include_phonon: bool = True,
    rho_sn=core.RHO_SN_DEFAULT,
    t=50e-9,
    floor_rate=None,
) -> ConcentrationEstimate:
    """Invert the 3He damping rate after subtracting modelled backgrounds.

    ``floor_rate`` is the smallest resolvable rate excess used to quote an
    upper bound when the measurement is at or below the background; it
    defaults to 1e-3 of the background.
    """
    gamma_measured = core.si(gamma_measured, core.FREQUENCY, "gamma_measured")
    gamma_intrinsic = core.si(gamma_intrinsic, core.FREQUENCY, "gamma_intrinsic")
    T = core.si(T, core.TEMPERATURE, "T")
    background = gamma_intrinsic
    if include_phonon:
        background += phonon_damping_rate(T, rho_sn, t, warn=False)
    residual = gamma_measured - background
    per_unit_x3 = he3_damping_rate(T, 1.0, rho_sn, t, warn=False)
    if residual <= 0:
        floor = floor_rate if floor_rate is not None else 1e-3 * background
        return ConcentrationEstimate(
            x3=floor / per_unit_x3, residual_rate=residual, below_floor=True, background_rate=background
        )
    return ConcentrationEstimate(
        x3=residual / per_unit_x3, residual_rate=residual, below_floor=False, background_rate=background
    )


def thermal_wavelength_he3(T, mass=M3_EFFECTIVE) -> float:
    """Thermal de Broglie wavelength h / sqrt(2 pi m k_B T) of a 3He quasiparticle (m)."""
    T = core.si(T, core.TEMPERATURE, "T")
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    return H / math.sqrt(2 * math.pi * mass * K_B * T)


def thermal_wavelength_temperature(wavelength, mass=M3_EFFECTIVE) -> float:
    """Inverse of :func:`thermal_wavelength_he3`."""
    wavelength = core.si(wavelength, core.LENGTH, "wavelength")
    return H**2 / (2 * math.pi * mass * K_B * wavelength**2)


def membrane_velocity(amplitude, omega0) -> float:
    return core.si(amplitude, core.LENGTH, "amplitude") * core.si(omega0, core.FREQUENCY, "omega0")


def landau_velocity_guard(amplitude, omega0) -> str:
    """``"valid"`` if the peak membrane velocity a*omega0 is below 1e-4 m/s.

    That threshold is nearly six orders of magnitude under the Landau
    velocity, so a valid result also satisfies v << v_L.
    """
    amplitude = core.si(amplitude, core.LENGTH, "amplitude")
    if amplitude < 0:
        raise DomainError(f"amplitude must be >= 0, got {amplitude!r}")
    v = membrane_velocity(amplitude, omega0)
    return "valid" if v < MAX_MEMBRANE_VELOCITY else "invalid"
