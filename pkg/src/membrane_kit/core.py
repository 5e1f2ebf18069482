"""Physical constants and dimension-checked quantities.

Values are SI. Physics functions elsewhere in the package take plain floats
(interpreted as SI) or :class:`Quantity` objects; a ``Quantity`` argument is
checked against the expected dimension before its value is used.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DimensionError

BASE_UNITS = ("m", "kg", "s", "A", "K", "mol", "cd")


@dataclass(frozen=True)
class Dimension:
    """Exponents of the seven SI base units.

    Exponents are stored as fractions so square roots of squared dimensions
    work; only integer and half-integer exponents are accepted.
    """

    exponents: tuple[Fraction, ...] = (Fraction(0),) * 7

    def __post_init__(self):
        if len(self.exponents) != 7:
            raise DimensionError(f"expected 7 exponents, got {len(self.exponents)}")
        exps = tuple(Fraction(e) for e in self.exponents)
        for e in exps:
            if e.denominator not in (1, 2):
                raise DimensionError(f"dimension exponent {e} is not an integer or half-integer")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def of(cls, **powers) -> "Dimension":
        unknown = set(powers) - set(BASE_UNITS)
        if unknown:
            raise DimensionError(f"unknown base units: {sorted(unknown)}")
        return cls(tuple(Fraction(powers.get(u, 0)) for u in BASE_UNITS))

    def __mul__(self, other: "Dimension") -> "Dimension":
        return Dimension(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return Dimension(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, power) -> "Dimension":
        p = Fraction(power)
        return Dimension(tuple(e * p for e in self.exponents))

    @property
    def dimensionless(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def __str__(self):
        parts = []
        for unit, e in zip(BASE_UNITS, self.exponents):
            if e == 0:
                continue
            parts.append(unit if e == 1 else f"{unit}^{e}")
        return "·".join(parts) if parts else "1"


DIMENSIONLESS = Dimension()
LENGTH = Dimension.of(m=1)
MASS = Dimension.of(kg=1)
TIME = Dimension.of(s=1)
TEMPERATURE = Dimension.of(K=1)
CURRENT = Dimension.of(A=1)
FREQUENCY = TIME**-1
VELOCITY = LENGTH / TIME
FORCE = MASS * LENGTH / TIME**2
ENERGY = FORCE * LENGTH
PRESSURE = FORCE / LENGTH**2
STIFFNESS = FORCE / LENGTH
DENSITY = MASS / LENGTH**3
NUMBER_DENSITY = LENGTH**-3
ACTION = ENERGY * TIME
ENTROPY = ENERGY / TEMPERATURE
VOLTAGE = ENERGY / (CURRENT * TIME)
IMPULSE = FORCE * TIME
FORCE_DENSITY = FORCE / FREQUENCY ** Fraction(1, 2)  # N/sqrt(Hz)
DISPLACEMENT_PSD = LENGTH**2 / FREQUENCY  # m^2/Hz

# Unit symbols accepted by the config parser and by :func:`quantity`.
UNITS: dict[str, tuple[float, Dimension]] = {
    "": (1.0, DIMENSIONLESS),
    "m": (1.0, LENGTH),
    "cm": (1e-2, LENGTH),
    "mm": (1e-3, LENGTH),
    "um": (1e-6, LENGTH),
    "nm": (1e-9, LENGTH),
    "s": (1.0, TIME),
    "Hz": (1.0, FREQUENCY),
    "rad/s": (1.0, FREQUENCY),
    "K": (1.0, TEMPERATURE),
    "mK": (1e-3, TEMPERATURE),
    "Pa": (1.0, PRESSURE),
    "MPa": (1e6, PRESSURE),
    "N": (1.0, FORCE),
    "N/m": (1.0, STIFFNESS),
    "N*s": (1.0, IMPULSE),
    "m/s": (1.0, VELOCITY),
    "kg": (1.0, MASS),
    "kg/m3": (1.0, DENSITY),
    "V": (1.0, VOLTAGE),
}


@dataclass(frozen=True)
class Quantity:
    """A real SI value tagged with its dimension."""

    value: float
    dim: Dimension = DIMENSIONLESS

    def _require_same(self, other: "Quantity", op: str):
        if self.dim != other.dim:
            raise DimensionError(f"cannot {op} [{self.dim}] and [{other.dim}]")

    def __add__(self, other):
        other = _as_quantity(other)
        self._require_same(other, "add")
        return Quantity(self.value + other.value, self.dim)

    def __sub__(self, other):
        other = _as_quantity(other)
        self._require_same(other, "subtract")
        return Quantity(self.value - other.value, self.dim)

    def __mul__(self, other):
        other = _as_quantity(other)
        return Quantity(self.value * other.value, self.dim * other.dim)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_quantity(other)
        return Quantity(self.value / other.value, self.dim / other.dim)

    def __rtruediv__(self, other):
        return _as_quantity(other) / self

    def __pow__(self, power):
        p = Fraction(power).limit_denominator(2)
        if p != Fraction(power):
            raise DimensionError(f"exponent {power} must be an integer or half-integer")
        return Quantity(self.value ** float(p), self.dim**p)

    def __neg__(self):
        return Quantity(-self.value, self.dim)

    def _compare(self, other, op):
        other = _as_quantity(other)
        self._require_same(other, "compare")
        return op(self.value, other.value)

    def __lt__(self, other):
        return self._compare(other, operator.lt)

    def __le__(self, other):
        return self._compare(other, operator.le)

    def __gt__(self, other):
        return self._compare(other, operator.gt)

    def __ge__(self, other):
        return self._compare(other, operator.ge)

    def __float__(self):
        if not self.dim.dimensionless:
            raise DimensionError(f"cannot convert [{self.dim}] quantity to a bare float")
        return float(self.value)

    def to(self, unit: str) -> float:
        """Numeric value expressed in ``unit`` (a key of :data:`UNITS`)."""
        scale, dim = _lookup_unit(unit)
        if dim != self.dim:
            raise DimensionError(f"cannot express [{self.dim}] in {unit!r}")
        return self.value / scale

    def __str__(self):
        return f"{self.value:g} {self.dim}"


def _as_quantity(x) -> Quantity:
    if isinstance(x, Quantity):
        return x
    return Quantity(float(x), DIMENSIONLESS)


def _lookup_unit(unit: str) -> tuple[float, Dimension]:
    try:
        return UNITS[unit]
    except KeyError:
        raise DimensionError(f"unknown unit {unit!r}") from None


def quantity(value: float, unit: str = "") -> Quantity:
    """Build a Quantity from a number in one of the :data:`UNITS` symbols."""
    scale, dim = _lookup_unit(unit)
    return Quantity(float(value) * scale, dim)


def checked_combine(a: Quantity, b, operator_name: str) -> Quantity:
    """Combine two quantities with dimension checking.

    ``operator_name`` is one of add, sub, mul, div, pow. For ``pow``, ``b`` is
    the (integer or half-integer) exponent.
    """
    if operator_name == "add":
        return a + b
    if operator_name == "sub":
        return a - b
    if operator_name == "mul":
        return a * b
    if operator_name == "div":
        return a / b
    if operator_name == "pow":
        exponent = b.value if isinstance(b, Quantity) else b
        if isinstance(b, Quantity) and not b.dim.dimensionless:
            raise DimensionError("exponent must be dimensionless")
        return a**exponent
    raise ValueError(f"unknown operator {operator_name!r}")


def si(x: Union[float, Quantity], dim: Dimension, name: str = "argument") -> float:
    """Return the SI float value of ``x``, checking its dimension if tagged."""
    if isinstance(x, Quantity):
        if x.dim != dim:
            raise DimensionError(f"{name} has dimension [{x.dim}], expected [{dim}]")
        return x.value
    return float(x)


# --- constants -------------------------------------------------------------

# SI 2019 exact defining constants.
K_B = 1.380649e-23  # J/K, exact (SI 2019)
H = 6.62607015e-34  # J s, exact (SI 2019)
HBAR = H / (2 * math.pi)
C = 299792458.0  # m/s, exact (SI 2019)
# CODATA 2018 atomic mass constant and atomic masses (AME 2016).
AMU = 1.66053906660e-27  # kg
M3_BARE = 3.01602932 * AMU  # 3He atomic mass
M4 = 4.00260325 * AMU  # 4He atomic mass
# Liquid 4He at T -> 0, saturated vapour pressure: 145 kg/m^3. Held fixed.
RHO_HE4 = 145.0  # kg/m^3
N4 = RHO_HE4 / M4  # number density, 1/m^3
RHO_SN_DEFAULT = 3100.0  # kg/m^3, typical LPCVD silicon nitride
C_PH = 237.0  # m/s, first sound in superfluid 4He

_CONSTANTS: dict[str, tuple[float, Dimension, str]] = {
    "k_b": (K_B, ENTROPY, "SI 2019 exact"),
    "h": (H, ACTION, "SI 2019 exact"),
    "hbar": (HBAR, ACTION, "h / 2pi, SI 2019 exact"),
    "c": (C, VELOCITY, "SI 2019 exact"),
    "amu": (AMU, MASS, "CODATA 2018"),
    "m3_bare": (M3_BARE, MASS, "3.01602932 u, AME 2016"),
    "m4": (M4, MASS, "4.00260325 u, AME 2016"),
    "n4": (N4, NUMBER_DENSITY, "145 kg/m^3 / m4, liquid 4He at T->0"),
    "rho_sn_default": (RHO_SN_DEFAULT, DENSITY, "typical LPCVD SiN"),
    "c_ph": (C_PH, VELOCITY, "first sound in superfluid 4He"),
}

CONSTANT_SET = "SI2019+CODATA2018"


def constant(name: str) -> Quantity:
    """Look up a named physical constant as a Quantity."""
    try:
        value, dim, _ = _CONSTANTS[name]
    except KeyError:
        raise KeyError(f"unknown constant {name!r}; known: {sorted(_CONSTANTS)}") from None
    return Quantity(value, dim)


def constant_source(name: str) -> str:
    return _CONSTANTS[name][2]


def constant_names() -> list[str]:
    return sorted(_CONSTANTS)
