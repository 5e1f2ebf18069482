"""Thermal force noise, displacement spectra and the S/N = 1 separation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .core import K_B
from .errors import DomainError, NumericalError

# S/N is an amplitude ratio in this bandwidth.
REFERENCE_BANDWIDTH = 1.0  # Hz


@dataclass(frozen=True)
class NoiseResult:
    s_f: float  # N/sqrt(Hz)
    s_x_peak: float  # m/sqrt(Hz)
    bandwidth: float  # Hz
    snr: float


def _positive(**kwargs):
    for name, value in kwargs.items():
        if not (value > 0 and math.isfinite(value)):
            raise DomainError(f"{name} must be positive and finite, got {value!r}")


def force_noise_density(k, T, omega0, Q) -> float:
    """Thermal force noise sqrt(4 k k_B T / (omega0 Q)) in N/sqrt(Hz)."""
    k = core.si(k, core.STIFFNESS, "k")
    T = core.si(T, core.TEMPERATURE, "T")
    omega0 = core.si(omega0, core.FREQUENCY, "omega0")
    Q = core.si(Q, core.DIMENSIONLESS, "Q")
    _positive(k=k, T=T, omega0=omega0, Q=Q)
    return math.sqrt(4 * k * K_B * T / (omega0 * Q))


def displacement_noise_psd(omega, m_eff, omega0, Q, T):
    """One-sided displacement PSD (m^2/Hz) of a thermally driven mode.

    The force PSD 4 k_B T m_eff omega0 / Q is filtered by the mechanical
    susceptibility. ``omega`` may be an array.
    """
    m_eff = core.si(m_eff, core.MASS, "m_eff")
    omega0 = core.si(omega0, core.FREQUENCY, "omega0")
    Q = core.si(Q, core.DIMENSIONLESS, "Q")
    T = core.si(T, core.TEMPERATURE, "T")
    _positive(m_eff=m_eff, omega0=omega0, Q=Q, T=T)
    if isinstance(omega, core.Quantity):
        omega = core.si(omega, core.FREQUENCY, "omega")
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise DomainError("omega must be positive")
    k = m_eff * omega0**2
    s_f2 = force_noise_density(k, T, omega0, Q) ** 2
    out = s_f2 / (m_eff**2 * ((omega0**2 - w**2) ** 2 + (omega0 * w / Q) ** 2))
    return float(out) if out.ndim == 0 else out


def min_detectable_force(s_f, bandwidth=REFERENCE_BANDWIDTH, snr_target=1.0) -> float:
    s_f = core.si(s_f, core.FORCE_DENSITY, "s_f")
    bandwidth = core.si(bandwidth, core.FREQUENCY, "bandwidth")
    if s_f < 0 or bandwidth < 0 or snr_target < 0:
        raise DomainError("s_f, bandwidth and snr_target must be >= 0")
    return snr_target * s_f * math.sqrt(bandwidth)


def bisect_monotone(func, target, lo, hi, rel_tol=1e-12, max_iter=400):
    """Find x in [lo, hi] with func(x) == target for monotone ``func``.

    Bisection is done in log space when both endpoints are positive, which
    suits separations and temperatures spanning decades.
    """
    f_lo = func(lo) - target
    f_hi = func(hi) - target
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NumericalError(f"root not bracketed in [{lo:g}, {hi:g}]")
    use_log = lo > 0 and hi > 0
    for _ in range(max_iter):
        mid = math.sqrt(lo * hi) if use_log else 0.5 * (lo + hi)
        f_mid = func(mid) - target
        if f_mid == 0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= rel_tol * 0.5 * abs(hi + lo):
            break
    return 0.5 * (lo + hi)


def snr_unity_distance(R, T, s_f, force_model=None, bandwidth=REFERENCE_BANDWIDTH) -> float:
    """Separation (m) at which the sphere-plane force equals the noise floor.

    ``force_model(R, T, d)`` defaults to the thermal sphere-plane force; any
    force that falls monotonically with d can be supplied.
    """
    from .casimir import thermal_sphere_plane

    R = core.si(R, core.LENGTH, "R")
    T = core.si(T, core.TEMPERATURE, "T")
    s_f = core.si(s_f, core.FORCE_DENSITY, "s_f")
    _positive(R=R, T=T, s_f=s_f)
    model = force_model or thermal_sphere_plane
    target = min_detectable_force(s_f, bandwidth, 1.0)

    def log_ratio(d):
        return math.log(model(R, T, d)) - math.log(target)

    lo, hi = 1e-12, 1.0
    while log_ratio(lo) < 0:
        lo *= 1e-3
        if lo < 1e-30:
            raise NumericalError("force never reaches the noise floor")
    while log_ratio(hi) > 0:
        hi *= 1e3
        if hi > 1e30:
            raise NumericalError("force never drops below the noise floor")
    return bisect_monotone(log_ratio, 0.0, lo, hi, rel_tol=1e-14)
