"""Casimir force models for the sphere-plane and plane-plane geometries.

Thermal-limit forces use a selectable coefficient: ``"paper"`` is the 1.2
prefactor of the long-distance sphere-plane formula used throughout this
package, ``"ideal-metal-pfa"`` is zeta(3)/8, the value obtained by applying
the proximity-force approximation to the ideal-metal plane-plane pressure.
Both are kept; neither is singled out as correct.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from scipy.special import zeta

from . import core
from .core import C, C_PH, HBAR, K_B
from .errors import DomainError, PhysicsWarning

ZETA3 = float(zeta(3))
THERMAL_COEFFICIENTS = {"paper": 1.2, "ideal-metal-pfa": ZETA3 / 8}
PHONON_FACTOR = 0.5  # one longitudinal polarisation versus two transverse EM ones
MIN_SPOT_DIAMETER = 2e-3  # m
MIN_FILM_THICKNESS = 50e-9  # m, optically thick metal film
PFA_RATIO_LIMIT = 0.01  # d / R above which PFA is flagged


def _positive(**kwargs):
    for name, value in kwargs.items():
        if not (value > 0 and math.isfinite(value)):
            raise DomainError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class SpherePlaneGeometry:
    radius: float
    separation: float
    conducting_spot_diameter: Optional[float] = None
    film_thickness: Optional[float] = None

    def __post_init__(self):
        _positive(radius=self.radius, separation=self.separation)

    def validity_warnings(self) -> list[str]:
        notes = []
        if self.separation > PFA_RATIO_LIMIT * self.radius:
            notes.append(f"d/R = {self.separation / self.radius:.3g} exceeds {PFA_RATIO_LIMIT}; PFA unreliable")
        if self.conducting_spot_diameter is not None and self.conducting_spot_diameter <= MIN_SPOT_DIAMETER:
            notes.append(
                f"conducting spot {self.conducting_spot_diameter:g} m must exceed {MIN_SPOT_DIAMETER:g} m "
                "for the sphere-plane approximation"
            )
        if self.film_thickness is not None and self.film_thickness < MIN_FILM_THICKNESS:
            notes.append(
                f"film thickness {self.film_thickness:g} m below {MIN_FILM_THICKNESS:g} m; "
                "thin-film corrections are not modelled"
            )
        return notes


def thermal_sphere_plane(R, T, d, coefficient: str = "paper") -> float:
    """Long-distance thermal sphere-plane force magnitude c R k_B T / d^2 (N)."""
    R = core.si(R, core.LENGTH, "R")
    T = core.si(T, core.TEMPERATURE, "T")
    d = core.si(d, core.LENGTH, "d")
    _positive(R=R, T=T, d=d)
    return THERMAL_COEFFICIENTS[coefficient] * R * K_B * T / d**2


def zero_temp_sphere_plane(R, d) -> float:
    """Ideal-conductor T = 0 sphere-plane force pi^3 hbar c R / (360 d^3) (N)."""
    R = core.si(R, core.LENGTH, "R")
    d = core.si(d, core.LENGTH, "d")
    _positive(R=R, d=d)
    return math.pi**3 * HBAR * C * R / (360 * d**3)


def thermal_plane_plane_pressure(T, d, medium: str = "vacuum") -> float:
    """High-temperature ideal-metal pressure zeta(3) k_B T / (8 pi d^3) (Pa).

    For ``medium="helium"`` the phonon factor of one half is applied, as for
    the sphere-plane force.
    """
    T = core.si(T, core.TEMPERATURE, "T")
    d = core.si(d, core.LENGTH, "d")
    _positive(T=T, d=d)
    p = ZETA3 * K_B * T / (8 * math.pi * d**3)
    return PHONON_FACTOR * p if medium == "helium" else p


def phonon_thermal_sphere_plane(R, T, d, coefficient: str = "paper") -> float:
    """Thermal Casimir force carried by superfluid phonons: half the EM value."""
    T = core.si(T, core.TEMPERATURE, "T")
    if T == 0:
        return 0.0
    return PHONON_FACTOR * thermal_sphere_plane(R, T, d, coefficient)


def phonon_zero_temp_suppression() -> float:
    """Zero-point phonon force relative to the EM one: c_ph / c."""
    return C_PH / C


def thermal_crossover_length(T) -> float:
    """hbar c / (k_B T), the distance beyond which the thermal term dominates."""
    T = core.si(T, core.TEMPERATURE, "T")
    _positive(T=T)
    return HBAR * C / (K_B * T)


@dataclass(frozen=True)
class ForceRegimeReport:
    force_thermal: float
    force_zero_t: float
    crossover_length: float
    dominant: str
    force_phonon: Optional[float] = None
    warnings: tuple[str, ...] = ()


def regime_report(
    geometry: SpherePlaneGeometry, T, medium: str = "vacuum", coefficient: str = "paper"
) -> ForceRegimeReport:
    """Compare the thermal and zero-temperature limits at one separation."""
    if medium not in ("vacuum", "helium"):
        raise DomainError(f"medium must be 'vacuum' or 'helium', got {medium!r}")
    T = core.si(T, core.TEMPERATURE, "T")
    R, d = geometry.radius, geometry.separation
    f_th = thermal_sphere_plane(R, T, d, coefficient)
    f_0 = zero_temp_sphere_plane(R, d)
    f_ph = phonon_thermal_sphere_plane(R, T, d, coefficient) if medium == "helium" else None
    notes = tuple(geometry.validity_warnings())
    for note in notes:
        warnings.warn(note, PhysicsWarning, stacklevel=2)
    return ForceRegimeReport(
        force_thermal=f_th,
        force_zero_t=f_0,
        crossover_length=thermal_crossover_length(T),
        dominant="thermal" if f_th >= f_0 else "zero-temperature",
        force_phonon=f_ph,
        warnings=notes,
    )
