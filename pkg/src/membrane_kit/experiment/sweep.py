"""Parameter sweeps, crossing points and the sweep result table."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .. import casimir, helium, noise
from ..errors import ConfigError, NumericalError
from ..noise import bisect_monotone
from . import models
from .config import AXES, ExperimentConfig, SweepSpec

UNITS = {
    "separation_d": "m",
    "temperature_T": "K",
    "he3_fraction_x3": "1",
    "force_thermal": "N",
    "force_zero_t": "N",
    "force_phonon": "N",
    "s_f": "N/Hz^0.5",
    "snr": "1",
    "snr_zero_t": "1",
    "gamma_intrinsic": "1/s",
    "gamma_support": "1/s",
    "gamma_phonon": "1/s",
    "gamma_he3": "1/s",
    "gamma_total": "1/s",
    "q_intrinsic": "1",
    "q_total": "1",
}

# Quoted reference value, kept for comparison; the formulas give 2.66e-4 m.
PAPER_SNR_UNITY_DISTANCE = 26e-6  # m, R = 1 cm, T = 300 K, S_F = 7e-16 N/sqrt(Hz)

DEFAULT_SWEEPS = {
    "separation_d": SweepSpec("separation_d", 1e-6, 1e-3, 61, "log"),
    "temperature_T": SweepSpec("temperature_T", 5e-3, 90e-3, 40, "log"),
    "he3_fraction_x3": SweepSpec("he3_fraction_x3", 1e-12, 1e-8, 41, "log"),
}


@dataclass
class SweepResult:
    axis: str
    columns: list[str]
    units: list[str]
    rows: list[list[float]]
    notes: dict[str, str] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows])

    def __len__(self):
        return len(self.rows)


def axis_values(spec: SweepSpec) -> np.ndarray:
    if spec.scale == "log":
        return np.geomspace(spec.start, spec.stop, spec.points)
    return np.linspace(spec.start, spec.stop, spec.points)


def resolve_sweep(config: ExperimentConfig, axis: Optional[str] = None) -> SweepSpec:
    """The config's sweep if it matches ``axis``, else the default for the axis."""
    if axis is not None and axis not in AXES:
        raise ConfigError(f"axis must be one of {AXES}", field="axis")
    if config.sweep is not None and (axis is None or config.sweep.axis == axis):
        return config.sweep
    if axis is None:
        raise ConfigError("no [sweep] section and no --axis given", field="axis")
    return DEFAULT_SWEEPS[axis]


def row_function(config: ExperimentConfig, axis: str) -> Callable[[float], dict[str, float]]:
    """The single-point computation each sweep row is made from."""
    if axis == "separation_d":
        if config.geometry is None:
            raise ConfigError("separation sweep needs a [geometry] section", field="geometry")
        return lambda d: models.separation_point(config, float(d))
    if axis == "temperature_T":
        return lambda T: models.damping_point(config, T=float(T), axis=axis)
    if axis == "he3_fraction_x3":
        if not config.environment.is_helium:
            raise ConfigError("he3 sweep needs medium = helium", field="medium")
        return lambda x3: models.damping_point(config, x3=float(x3), axis=axis)
    raise ConfigError(f"axis must be one of {AXES}", field="axis")


def _crossing(func, target, xs, ys, rel_tol=1e-6):
    """Locate func(x) == target between the first pair of bracketing rows."""
    diff = np.asarray(ys) - target
    for i in range(len(xs) - 1):
        if diff[i] == 0:
            return float(xs[i])
        if (diff[i] > 0) != (diff[i + 1] > 0):
            return bisect_monotone(func, target, float(xs[i]), float(xs[i + 1]), rel_tol=rel_tol)
    return None


def run_sweep(config: ExperimentConfig, axis: Optional[str] = None) -> SweepResult:
    spec = resolve_sweep(config, axis)
    func = row_function(config, spec.axis)
    xs = axis_values(spec)
    dicts = [func(x) for x in xs]
    columns = list(dicts[0])
    result = SweepResult(
        axis=spec.axis,
        columns=columns,
        units=[UNITS[c] for c in columns],
        rows=[[d[c] for c in columns] for d in dicts],
    )
    result.notes.update(_crossings(config, spec.axis, func, xs, result))
    return result


def _fmt(value: Optional[float], unit: str) -> str:
    return "none" if value is None else f"{value!r} {unit}"


def _crossings(config, axis, func, xs, result) -> dict[str, str]:
    notes = {}
    if axis == "separation_d":
        snr = result.column("snr")
        d_cross = _crossing(lambda d: func(d)["snr"], 1.0, xs, snr)
        notes["snr_unity_crossing"] = _fmt(d_cross, "m")
        geom = config.geometry
        s_f = models.force_noise(config)

        def model(R, T, d):
            return casimir.thermal_sphere_plane(R, T, d, geom.coefficient)

        d_solver = noise.snr_unity_distance(geom.radius, config.temperature, s_f, force_model=model)
        notes["snr_unity_distance.recomputed"] = _fmt(d_solver, "m")
        notes["snr_unity_distance.paper_stated"] = _fmt(PAPER_SNR_UNITY_DISTANCE, "m")
        notes["snr_unity_distance.paper_scenario"] = "R=0.01 m T=300 K s_f=7e-16 N/Hz^0.5"
        notes["snr_unity_distance.paper_inputs_recomputed"] = _fmt(
            noise.snr_unity_distance(1e-2, 300.0, 7e-16), "m"
        )
    elif axis == "temperature_T" and config.environment.is_helium:
        g_int = result.column("gamma_intrinsic")
        g_ph = result.column("gamma_phonon")
        t_cross = _crossing(
            lambda T: math.log(func(T)["gamma_phonon"] / func(T)["gamma_intrinsic"]),
            0.0,
            xs,
            np.log(g_ph / g_int),
        )
        notes["phonon_intrinsic_crossover_T"] = _fmt(t_cross, "K")
        g_he3 = result.column("gamma_he3")
        if np.all(g_he3 > 0):
            t_he3 = _crossing(
                lambda T: math.log(func(T)["gamma_phonon"] / func(T)["gamma_he3"]),
                0.0,
                xs,
                np.log(g_ph / g_he3),
            )
            notes["phonon_he3_crossover_T"] = _fmt(t_he3, "K")
        mode = models.mode_parameters(config)
        spec = config.membrane
        notes["phonon_q_1e7_T.recomputed"] = _fmt(
            helium.phonon_q_temperature(1e7, mode.omega0, spec.density, spec.thickness), "K"
        )
        notes["phonon_q_1e7_T.paper_stated"] = _fmt(30e-3, "K")
    elif axis == "he3_fraction_x3":
        g_he3 = result.column("gamma_he3")
        g_int = result.column("gamma_intrinsic")
        try:
            x_cross = _crossing(
                lambda x: func(x)["gamma_he3"] - func(x)["gamma_intrinsic"], 0.0, xs, g_he3 - g_int
            )
        except NumericalError:
            x_cross = None
        notes["he3_equals_intrinsic_x3"] = _fmt(x_cross, "1")
    return notes


def _run_axis(config: ExperimentConfig, axis: str, sweep: Optional[SweepSpec]) -> SweepResult:
    if sweep is not None:
        if sweep.axis != axis:
            raise ConfigError(f"sweep axis must be {axis}, got {sweep.axis}", field="axis")
        config = replace(config, sweep=sweep)
    return run_sweep(config, axis)


def total_q_vs_temperature(config: ExperimentConfig, sweep: Optional[SweepSpec] = None) -> SweepResult:
    return _run_axis(config, "temperature_T", sweep)


def snr_vs_separation(config: ExperimentConfig, sweep: Optional[SweepSpec] = None) -> SweepResult:
    return _run_axis(config, "separation_d", sweep)


def q_vs_he3_fraction(config: ExperimentConfig, sweep: Optional[SweepSpec] = None) -> SweepResult:
    return _run_axis(config, "he3_fraction_x3", sweep)
