"""Experiment configuration: a flat ``[section]`` / ``key = value unit`` format.

Example::

    [membrane]
    side_x = 1 mm
    thickness = 50 nm
    q_intrinsic = 1e6 @ 300 K, 1e7 @ 300 mK

    [environment]
    medium = helium
    temperature = 30 mK
    he3_fraction = 1e-10

Numbers use a decimal point only; unit scaling is done in decimal
arithmetic so ``50 nm`` parses to exactly the float nearest 5e-8.
:func:`dump_config` writes the effective configuration (every default
filled in, SI units) and :func:`load_config` of that text reproduces the
same object.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass, fields
from decimal import Decimal, InvalidOperation
from typing import Optional

from .. import core
from ..casimir import THERMAL_COEFFICIENTS, SpherePlaneGeometry
from ..errors import ConfigError, MembraneKitError
from ..helium import PHONON_ONLY_LIMIT, HeliumEnvironment
from ..membrane import DEFAULT_MAX_LINEAR_AMPLITUDE, DEFAULT_Q_TABLE, DEFAULT_STRESS, MembraneSpec
from ..readout import CapacitiveReadout
from ..ringdown import Drive

# Decimal scale factors, kept as strings so scaling is exact.
_SCALES = {
    "": "1",
    "m": "1",
    "cm": "1e-2",
    "mm": "1e-3",
    "um": "1e-6",
    "nm": "1e-9",
    "s": "1",
    "Hz": "1",
    "rad/s": "1",
    "K": "1",
    "mK": "1e-3",
    "Pa": "1",
    "MPa": "1e6",
    "N": "1",
    "N/m": "1",
    "N*s": "1",
    "m/s": "1",
    "kg/m3": "1",
    "V": "1",
}

AXES = ("separation_d", "temperature_T", "he3_fraction_x3")
MEDIA = ("vacuum", "helium")
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


@dataclass(frozen=True)
class Environment:
    medium: str = "vacuum"
    temperature: float = 300.0
    he3_fraction: float = 0.0
    medium_valid_below: float = PHONON_ONLY_LIMIT
    mass_loading: float = 1.0  # multiplier on m_eff for liquid loading; no model, user-supplied

    @property
    def is_helium(self) -> bool:
        return self.medium == "helium"

    def helium(self) -> HeliumEnvironment:
        return HeliumEnvironment(self.temperature, self.he3_fraction, self.medium_valid_below)


@dataclass(frozen=True)
class Support:
    mass_ratio: Optional[float] = None
    mount_q: float = 1.0


@dataclass(frozen=True)
class GeometryConfig:
    radius: float = 1e-2
    separation: float = 26e-6
    conducting_spot_diameter: Optional[float] = None
    film_thickness: Optional[float] = None
    coefficient: str = "paper"

    def geometry(self, separation: Optional[float] = None) -> SpherePlaneGeometry:
        return SpherePlaneGeometry(
            self.radius,
            self.separation if separation is None else separation,
            self.conducting_spot_diameter,
            self.film_thickness,
        )


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    start: float
    stop: float
    points: int = 50
    scale: str = "log"

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigError(f"axis must be one of {AXES}", field="axis")
        if not self.start < self.stop:
            raise ConfigError("sweep start must be below stop", field="start")
        if int(self.points) != self.points or self.points < 2:
            raise ConfigError("points must be an integer >= 2", field="points")
        if self.scale not in ("linear", "log"):
            raise ConfigError("scale must be 'linear' or 'log'", field="scale")
        if self.scale == "log" and self.start <= 0:
            raise ConfigError("log sweep needs positive endpoints", field="start")


@dataclass(frozen=True)
class SimSection:
    """Simulation settings; ``None`` values are derived from the mode when run."""

    dt: Optional[float] = None
    duration: Optional[float] = None
    seed: int = 0
    initial_amplitude: float = 0.1e-9
    initial_velocity: float = 0.0
    drive: str = "none"
    impulse: float = 0.0
    drive_force: float = 0.0
    drive_frequency: Optional[float] = None
    drive_on: float = 0.0
    drive_off: Optional[float] = None
    record_decimation: int = 5

    def make_drive(self, f0: float) -> Drive:
        if self.drive == "impulse":
            return Drive("impulse", impulse=self.impulse)
        if self.drive == "sinusoid":
            freq = self.drive_frequency if self.drive_frequency is not None else f0
            return Drive(
                "sinusoid",
                force=self.drive_force,
                omega=2 * math.pi * freq,
                t_on=self.drive_on,
                t_off=math.inf if self.drive_off is None else self.drive_off,
            )
        return Drive()


@dataclass(frozen=True)
class ExperimentConfig:
    membrane: MembraneSpec
    support: Support
    environment: Environment
    geometry: Optional[GeometryConfig] = None
    readout: Optional[CapacitiveReadout] = None
    sweep: Optional[SweepSpec] = None
    sim: Optional[SimSection] = None

    @property
    def temperature(self) -> float:
        return self.environment.temperature


# --- schema -----------------------------------------------------------------

# (key, attribute, kind, dimension or choices, default)
# kinds: "q" quantity, "oq" optional quantity, "f" dimensionless float,
# "of" optional dimensionless, "i" integer, "c" choice, "table" Q table.
_SCHEMA: dict[str, list[tuple]] = {
    "membrane": [
        ("side_x", "side_x", "q", core.LENGTH, 1e-3),
        ("side_y", "side_y", "q", core.LENGTH, 1e-3),
        ("thickness", "thickness", "q", core.LENGTH, 50e-9),
        ("density", "density", "q", core.DENSITY, core.RHO_SN_DEFAULT),
        ("stress", "stress", "q", core.PRESSURE, DEFAULT_STRESS),
        ("q_intrinsic", "q_intrinsic", "table", None, DEFAULT_Q_TABLE),
        ("override_k", "override_k", "oq", core.STIFFNESS, None),
        ("override_f0", "override_f0", "oq", core.FREQUENCY, None),
        ("max_linear_amplitude", "max_linear_amplitude", "q", core.LENGTH, DEFAULT_MAX_LINEAR_AMPLITUDE),
        ("support_mass_ratio", "support.mass_ratio", "of", None, None),
        ("mount_q", "support.mount_q", "f", None, 1.0),
    ],
    "environment": [
        ("medium", "medium", "c", MEDIA, "vacuum"),
        ("temperature", "temperature", "q", core.TEMPERATURE, 300.0),
        ("he3_fraction", "he3_fraction", "f", None, 0.0),
        ("medium_valid_below", "medium_valid_below", "q", core.TEMPERATURE, PHONON_ONLY_LIMIT),
        ("mass_loading", "mass_loading", "f", None, 1.0),
    ],
    "geometry": [
        ("radius", "radius", "q", core.LENGTH, 1e-2),
        ("separation", "separation", "q", core.LENGTH, 26e-6),
        ("conducting_spot_diameter", "conducting_spot_diameter", "oq", core.LENGTH, None),
        ("film_thickness", "film_thickness", "oq", core.LENGTH, None),
        ("coefficient", "coefficient", "c", tuple(THERMAL_COEFFICIENTS), "paper"),
    ],
    "readout": [
        ("gap", "gap", "q", core.LENGTH, 1e-4),
        ("bias_voltage", "bias_voltage", "q", core.VOLTAGE, 1.0),
    ],
    "sweep": [
        ("axis", "axis", "c", AXES, None),
        ("start", "start", "ax", None, None),
        ("stop", "stop", "ax", None, None),
        ("points", "points", "i", None, 50),
        ("scale", "scale", "c", ("linear", "log"), "log"),
    ],
    "sim": [
        ("dt", "dt", "oq", core.TIME, None),
        ("duration", "duration", "oq", core.TIME, None),
        ("seed", "seed", "i", None, 0),
        ("initial_amplitude", "initial_amplitude", "q", core.LENGTH, 0.1e-9),
        ("initial_velocity", "initial_velocity", "q", core.VELOCITY, 0.0),
        ("drive", "drive", "c", ("none", "impulse", "sinusoid"), "none"),
        ("impulse", "impulse", "q", core.IMPULSE, 0.0),
        ("drive_force", "drive_force", "q", core.FORCE, 0.0),
        ("drive_frequency", "drive_frequency", "oq", core.FREQUENCY, None),
        ("drive_on", "drive_on", "q", core.TIME, 0.0),
        ("drive_off", "drive_off", "oq", core.TIME, None),
        ("record_decimation", "record_decimation", "i", None, 5),
    ],
}

AXIS_DIMENSION = {
    "separation_d": core.LENGTH,
    "temperature_T": core.TEMPERATURE,
    "he3_fraction_x3": core.DIMENSIONLESS,
}
SI_SYMBOL = {
    core.LENGTH: "m",
    core.TIME: "s",
    core.FREQUENCY: "Hz",
    core.TEMPERATURE: "K",
    core.PRESSURE: "Pa",
    core.STIFFNESS: "N/m",
    core.DENSITY: "kg/m3",
    core.VOLTAGE: "V",
    core.FORCE: "N",
    core.IMPULSE: "N*s",
    core.VELOCITY: "m/s",
    core.DIMENSIONLESS: "",
}


def _parse_number(text: str, line: int, key: str) -> Decimal:
    if not _NUMBER.match(text):
        raise ConfigError(f"not a number: {text!r}", line=line, field=key)
    try:
        return Decimal(text)
    except InvalidOperation:
        raise ConfigError(f"not a number: {text!r}", line=line, field=key) from None


def parse_quantity(text: str, dim, line: Optional[int] = None, key: Optional[str] = None) -> float:
    """Parse ``"<number> [unit]"`` and check it against ``dim``."""
    parts = text.split()
    if not 1 <= len(parts) <= 2:
        raise ConfigError(f"expected '<number> <unit>', got {text!r}", line=line, field=key)
    number = _parse_number(parts[0], line, key)
    unit = parts[1] if len(parts) == 2 else ""
    if unit not in _SCALES:
        raise ConfigError(f"unknown unit {unit!r}; allowed: {sorted(u for u in _SCALES if u)}", line=line, field=key)
    unit_dim = core.UNITS[unit][1]
    if unit_dim != dim:
        expected = SI_SYMBOL.get(dim, str(dim)) or "no unit"
        raise ConfigError(f"unit mismatch: {unit or 'no unit'!r} given, expected {expected}", line=line, field=key)
    return float(number * Decimal(_SCALES[unit]))


def _parse_table(text: str, line: int, key: str) -> dict[float, float]:
    table = {}
    for entry in text.split(","):
        if "@" not in entry:
            raise ConfigError(f"table entry {entry.strip()!r} must look like '<Q> @ <T> K'", line=line, field=key)
        q_text, t_text = entry.split("@", 1)
        q = float(_parse_number(q_text.strip(), line, key))
        temp = parse_quantity(t_text.strip(), core.TEMPERATURE, line, key)
        table[temp] = q
    return table


def _tokenize(text: str):
    """Yield (line_no, section, key, value) tuples."""
    section = None
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {line!r}", line=line_no)
            section = line[1:-1].strip()
            if section not in _SCHEMA:
                raise ConfigError(f"unknown section [{section}]; known: {list(_SCHEMA)}", line=line_no)
            yield line_no, section, None, None
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=line_no)
        if section is None:
            raise ConfigError("key outside of any [section]", line=line_no)
        key, value = (s.strip() for s in line.split("=", 1))
        yield line_no, section, key, value


def load_config(text: str) -> ExperimentConfig:
    """Parse and validate a config document; every default is filled in."""
    raw: dict[str, dict[str, tuple[int, str]]] = {}
    for line_no, section, key, value in _tokenize(text):
        sect = raw.setdefault(section, {})
        if key is None:
            continue
        known = {entry[0] for entry in _SCHEMA[section]}
        if key not in known:
            raise ConfigError(f"unknown key in [{section}]", line=line_no, field=key)
        if key in sect:
            raise ConfigError("duplicate key", line=line_no, field=key)
        sect[key] = (line_no, value)
    if "membrane" not in raw:
        raise ConfigError("missing required [membrane] section")

    values: dict[str, dict] = {}
    lines = {key: entry[0] for entries in raw.values() for key, entry in entries.items()}
    for section, entries in raw.items():
        out = values[section] = {}
        axis = entries.get("axis", (None, None))[1] if section == "sweep" else None
        for key, attr, kind, spec, default in _SCHEMA[section]:
            if key not in entries:
                if kind == "c" and default is None or kind == "ax":
                    raise ConfigError(f"missing key in [{section}]", field=key)
                out[attr] = dict(default) if kind == "table" else default
                continue
            line_no, text = entries[key]
            if kind in ("q", "oq"):
                if kind == "oq" and text == "none":
                    out[attr] = None
                else:
                    out[attr] = parse_quantity(text, spec, line_no, key)
            elif kind in ("f", "of"):
                if kind == "of" and text == "none":
                    out[attr] = None
                else:
                    out[attr] = float(_parse_number(text, line_no, key))
            elif kind == "i":
                number = _parse_number(text, line_no, key)
                if number != number.to_integral_value():
                    raise ConfigError("expected an integer", line=line_no, field=key)
                out[attr] = int(number)
            elif kind == "c":
                if text not in spec:
                    raise ConfigError(f"must be one of {list(spec)}, got {text!r}", line=line_no, field=key)
                out[attr] = text
            elif kind == "table":
                out[attr] = _parse_table(text, line_no, key)
            elif kind == "ax":
                if axis not in AXIS_DIMENSION:
                    raise ConfigError(f"axis must be one of {AXES}", field="axis")
                out[attr] = parse_quantity(text, AXIS_DIMENSION[axis], line_no, key)
    try:
        return _build(values, lines)
    except ConfigError as exc:
        if exc.line is None and exc.field in lines:
            raise ConfigError(exc.message, line=lines[exc.field], field=exc.field) from None
        raise


def _build(values: dict[str, dict], lines: dict[str, int]) -> ExperimentConfig:
    def wrap(section, factory, key=None):
        try:
            return factory()
        except ConfigError:
            raise
        except MembraneKitError as exc:
            raise ConfigError(f"[{section}] {exc}", line=lines.get(key), field=key) from exc

    mem = dict(values["membrane"])
    support = Support(mem.pop("support.mass_ratio"), mem.pop("support.mount_q"))
    if support.mass_ratio is not None and (support.mass_ratio < 1 or support.mount_q < 1):
        raise ConfigError("support_mass_ratio and mount_q must be >= 1", field="support_mass_ratio")
    membrane = wrap("membrane", lambda: MembraneSpec(**mem))

    env_values = values.get("environment") or {e[1]: e[4] for e in _SCHEMA["environment"]}
    environment = Environment(**env_values)
    if not environment.temperature > 0:
        raise ConfigError("temperature must be positive", line=lines.get("temperature"), field="temperature")
    if not environment.mass_loading >= 1:
        raise ConfigError("mass_loading must be >= 1", field="mass_loading")
    if environment.is_helium:
        wrap("environment", environment.helium, "temperature")
    elif environment.he3_fraction != 0:
        raise ConfigError("he3_fraction requires medium = helium", field="he3_fraction")

    geometry = None
    if "geometry" in values:
        geometry = GeometryConfig(**values["geometry"])
        wrap("geometry", geometry.geometry)
    readout = wrap("readout", lambda: CapacitiveReadout(**values["readout"])) if "readout" in values else None
    sweep = SweepSpec(**values["sweep"]) if "sweep" in values else None
    sim = SimSection(**values["sim"]) if "sim" in values else None
    if sim is not None and sim.record_decimation < 1:
        raise ConfigError("record_decimation must be >= 1", field="record_decimation")
    return ExperimentConfig(membrane, support, environment, geometry, readout, sweep, sim)


# --- emission ---------------------------------------------------------------


def _format_value(value, kind, spec, axis=None) -> str:
    if value is None:
        return "none"
    if kind in ("q", "oq"):
        unit = SI_SYMBOL[spec]
        return f"{value!r} {unit}".rstrip()
    if kind == "ax":
        unit = SI_SYMBOL[AXIS_DIMENSION[axis]]
        return f"{value!r} {unit}".rstrip()
    if kind in ("f", "of"):
        return repr(float(value))
    if kind == "i":
        return str(int(value))
    if kind == "c":
        return value
    if kind == "table":
        return ", ".join(f"{float(q)!r} @ {float(t)!r} K" for t, q in sorted(value.items(), reverse=True))
    raise AssertionError(kind)


def _section_values(config: ExperimentConfig, section: str) -> Optional[dict]:
    if section == "membrane":
        out = {f.name: getattr(config.membrane, f.name) for f in fields(MembraneSpec)}
        out["support.mass_ratio"] = config.support.mass_ratio
        out["support.mount_q"] = config.support.mount_q
        return out
    obj = {
        "environment": config.environment,
        "geometry": config.geometry,
        "readout": config.readout,
        "sweep": config.sweep,
        "sim": config.sim,
    }[section]
    if obj is None:
        return None
    return {f.name: getattr(obj, f.name) for f in fields(obj)}


def dump_config(config: ExperimentConfig) -> str:
    """Effective-config echo in SI units; a fixed point of :func:`load_config`."""
    lines = []
    for section, schema in _SCHEMA.items():
        vals = _section_values(config, section)
        if vals is None:
            continue
        lines.append(f"[{section}]")
        axis = vals.get("axis") if section == "sweep" else None
        for key, attr, kind, spec, _ in schema:
            lines.append(f"{key} = {_format_value(vals[attr], kind, spec, axis)}")
        lines.append("")
    return "\n".join(lines)


def config_hash(config: ExperimentConfig) -> str:
    return hashlib.sha256(dump_config(config).encode()).hexdigest()


def default_config() -> ExperimentConfig:
    return load_config("[membrane]\n")
