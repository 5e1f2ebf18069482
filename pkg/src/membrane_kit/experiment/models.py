"""Composite single-point models built from a configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .. import casimir, helium, membrane, noise
from ..membrane import DampingBudget, combine_q
from .config import ExperimentConfig


@dataclass(frozen=True)
class ModeParameters:
    f0: float
    omega0: float
    k: float
    m_eff: float


def mode_parameters(config: ExperimentConfig) -> ModeParameters:
    """Fundamental-mode parameters, honouring measured overrides.

    ``mass_loading`` scales m_eff at fixed k, lowering f0 accordingly.
    """
    spec = config.membrane
    k = membrane.spring_constant(spec)
    f0 = membrane.mode_frequency(spec)
    m_eff = k / (2 * math.pi * f0) ** 2
    loading = config.environment.mass_loading
    if loading != 1.0:
        m_eff *= loading
        f0 /= math.sqrt(loading)
    return ModeParameters(f0=f0, omega0=2 * math.pi * f0, k=k, m_eff=m_eff)


def damping_budget(config: ExperimentConfig, T=None, x3=None) -> DampingBudget:
    """Damping channels at temperature ``T`` and 3He fraction ``x3``.

    Phonon and 3He channels appear only for a helium environment.
    """
    env = config.environment
    T = env.temperature if T is None else T
    x3 = env.he3_fraction if x3 is None else x3
    mode = mode_parameters(config)
    spec = config.membrane
    budget = DampingBudget(f0=mode.f0)
    budget.add_q("intrinsic", spec.intrinsic_q(T))
    if config.support.mass_ratio is not None:
        budget.add_q("support", membrane.support_limited_q(config.support.mass_ratio, config.support.mount_q))
    if env.is_helium:
        helium.check_temperature(T, env.medium_valid_below, warn=False)
        budget.add_rate("phonon", helium.phonon_damping_rate(T, spec.density, spec.thickness, warn=False))
        budget.add_rate("he3", helium.he3_damping_rate(T, x3, spec.density, spec.thickness, warn=False))
    return budget


def total_q(config: ExperimentConfig, T=None, x3=None) -> float:
    return combine_q(damping_budget(config, T, x3)).q_total


def force_noise(config: ExperimentConfig, T=None) -> float:
    """Thermal force noise density at the configured total Q."""
    T = config.temperature if T is None else T
    mode = mode_parameters(config)
    return noise.force_noise_density(mode.k, T, mode.omega0, total_q(config, T))


def separation_point(config: ExperimentConfig, d: float) -> dict[str, float]:
    geom = config.geometry
    T = config.temperature
    s_f = force_noise(config)
    floor = noise.min_detectable_force(s_f)
    f_th = casimir.thermal_sphere_plane(geom.radius, T, d, geom.coefficient)
    f_0 = casimir.zero_temp_sphere_plane(geom.radius, d)
    row = {
        "separation_d": d,
        "force_thermal": f_th,
        "force_zero_t": f_0,
    }
    if config.environment.is_helium:
        row["force_phonon"] = casimir.phonon_thermal_sphere_plane(geom.radius, T, d, geom.coefficient)
    row["s_f"] = s_f
    row["snr"] = f_th / floor
    row["snr_zero_t"] = f_0 / floor
    return row


def damping_point(config: ExperimentConfig, T=None, x3=None, axis="temperature_T") -> dict[str, float]:
    budget = damping_budget(config, T, x3)
    combined = combine_q(budget)
    row = {axis: T if axis == "temperature_T" else x3}
    for name, rate in budget.rates.items():
        row[f"gamma_{name}"] = rate
    row["gamma_total"] = combined.gamma_total
    row["q_intrinsic"] = budget.q("intrinsic")
    row["q_total"] = combined.q_total
    return row
