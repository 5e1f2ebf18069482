"""Langevin simulation of a single membrane mode and Q estimators.

The equation of motion is

    m x'' = -k x - m gamma x' + F_drive(t) + F_th(t),

with F_th white noise of one-sided PSD 4 k_B T m gamma. It is integrated
exactly: with lam = -gamma/2 + i omega_d the complex coordinate
z = x' - conj(lam) x obeys the scalar equation z' = lam z + F/m, so each
step is a complex rotation-and-decay plus a Gaussian increment with the
exact discrete covariance. There is no step-size bias, and because
successive steps compose exactly, a decimated record is produced by stepping
directly at the record interval.
"""

from __future__ import annotations

import io
import math
import os
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize, signal

from .core import K_B
from .errors import NumericalError, PhysicsWarning, ResolutionError, ValidationError
from .membrane import DEFAULT_MAX_LINEAR_AMPLITUDE

RNG_ALGORITHM = f"numpy.random.PCG64 (numpy {np.__version__})"
_CHUNK = 1 << 20
MIN_PERIODS_PER_STEP = 100
MIN_FIT_PERIODS = 20
MIN_SPECTRUM_SAMPLES = 256
BINS_PER_LINEWIDTH = 10
FLOOR_FACTOR = 3.0
SMOOTH_BINS = 5


@dataclass(frozen=True)
class Drive:
    """External force: ``none``, an ``impulse`` at t = 0 or a gated ``sinusoid``."""

    kind: str = "none"
    impulse: float = 0.0  # N s
    force: float = 0.0  # N, sinusoid amplitude
    omega: float = 0.0  # rad/s
    t_on: float = 0.0
    t_off: float = math.inf

    def __post_init__(self):
        if self.kind not in ("none", "impulse", "sinusoid"):
            raise ValidationError(f"unknown drive kind {self.kind!r}")
        if self.kind == "sinusoid" and not (self.omega > 0 and self.t_off > self.t_on):
            raise ValidationError("sinusoid drive needs omega > 0 and t_off > t_on")


@dataclass(frozen=True)
class SimConfig:
    dt: float
    duration: float
    seed: int = 0
    initial_amplitude: float = 0.0
    initial_velocity: float = 0.0
    drive: Drive = field(default_factory=Drive)
    record_decimation: int = 1

    def validate(self, omega0: float) -> None:
        if not (self.dt > 0 and self.duration > 0):
            raise ValidationError("dt and duration must be positive")
        period = 2 * math.pi / omega0
        if self.dt > period / MIN_PERIODS_PER_STEP * (1 + 1e-12):
            raise ValidationError(
                f"dt = {self.dt:g} s exceeds period/{MIN_PERIODS_PER_STEP} = {period / MIN_PERIODS_PER_STEP:g} s"
            )
        if self.duration < 10 * self.dt:
            raise ValidationError("duration must be at least 10 dt")
        if int(self.record_decimation) != self.record_decimation or self.record_decimation < 1:
            raise ValidationError("record_decimation must be a positive integer")
        if not 0 <= int(self.seed) < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")


@dataclass
class TimeSeries:
    t0: float
    dt: float
    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.ndim != 1:
            raise ValidationError("samples must be one-dimensional")
        if not self.dt > 0:
            raise ValidationError("dt must be positive")
        if not np.all(np.isfinite(self.samples)):
            raise ValidationError("time series contains non-finite samples")

    def __len__(self):
        return len(self.samples)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self.samples))


def write_timeseries(series: TimeSeries, dest, extra_header: Optional[dict] = None) -> None:
    """Write the trace CSV: ``# t0=.. dt=.. n=..`` then one value per line."""
    lines = [f"# t0={series.t0!r} dt={series.dt!r} n={len(series)}"]
    for key, value in (extra_header or {}).items():
        lines.append(f"# {key}={value}")
    body = "\n".join(repr(float(v)) for v in series.samples)
    text = "\n".join(lines) + "\n" + body + ("\n" if len(series) else "")
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w") as fh:
            fh.write(text)
    else:
        dest.write(text)


def read_timeseries(src) -> TimeSeries:
    if isinstance(src, (str, os.PathLike)):
        with open(src) as fh:
            text = fh.read()
    else:
        text = src.read()
    header = None
    values = []
    for lineno, line in enumerate(io.StringIO(text), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = dict(tok.split("=", 1) for tok in line[1:].split() if "=" in tok)
            if header is None and {"t0", "dt", "n"} <= fields.keys():
                header = fields
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ValidationError(f"line {lineno}: not a number: {line!r}") from None
    if header is None:
        raise ValidationError("missing '# t0=.. dt=.. n=..' header")
    n = int(header["n"])
    if n != len(values):
        raise ValidationError(f"header says n={n} but {len(values)} samples were read")
    return TimeSeries(t0=float(header["t0"]), dt=float(header["dt"]), samples=np.array(values))


def _noise_cholesky(lam: complex, gamma: float, diffusion: float, step: float) -> np.ndarray:
    """Cholesky factor of the (Re, Im) covariance of one exact noise increment."""
    mean_sq = diffusion * (-math.expm1(-gamma * step) / gamma)
    pseudo = diffusion * (np.expm1(2 * lam * step) / (2 * lam))
    var_re = 0.5 * (mean_sq + pseudo.real)
    var_im = 0.5 * (mean_sq - pseudo.real)
    cov = 0.5 * pseudo.imag
    l11 = math.sqrt(max(var_re, 0.0))
    l21 = cov / l11 if l11 > 0 else 0.0
    l22 = math.sqrt(max(var_im - l21 * l21, 0.0))
    return np.array([[l11, 0.0], [l21, l22]])


def _sinusoid_increment(lam, drive: Drive, m_eff, t_start, step):
    """Exact response increment of z over each step to a gated cosine force."""
    s1 = np.clip(drive.t_on - t_start, 0.0, step)
    s2 = np.clip(drive.t_off - t_start, 0.0, step)
    out = np.zeros(len(t_start), dtype=complex)
    for sign in (1.0, -1.0):
        c = 1j * sign * drive.omega - lam
        width = s2 - s1
        cw = c * width
        small = np.abs(cw) < 1e-8
        # (exp(c s2) - exp(c s1)) / c, stable as c -> 0
        ratio = np.where(small, width * (1 + 0.5 * cw), np.expm1(np.where(small, 0, cw)) / np.where(small, 1, c))
        term = np.exp(lam * step + 1j * sign * drive.omega * t_start + c * s1) * ratio
        out += term
    return drive.force / (2 * m_eff) * out


def simulate(
    m_eff: float,
    k: float,
    gamma_total: float,
    T: float,
    config: SimConfig,
    *,
    max_linear_amplitude: float = DEFAULT_MAX_LINEAR_AMPLITUDE,
) -> TimeSeries:
    """Simulate the displacement record of one thermally driven mode."""
    if not (m_eff > 0 and k > 0):
        raise ValidationError("m_eff and k must be positive")
    if gamma_total < 0 or T < 0:
        raise ValidationError("gamma_total and T must be >= 0")
    omega0 = math.sqrt(k / m_eff)
    config.validate(omega0)
    if gamma_total >= 2 * omega0:
        raise ValidationError("mode is not underdamped (Q <= 1/2)")
    if abs(config.initial_amplitude) > max_linear_amplitude:
        warnings.warn(
            f"initial amplitude {config.initial_amplitude:g} m exceeds the linear limit {max_linear_amplitude:g} m",
            PhysicsWarning,
            stacklevel=2,
        )

    omega_d = math.sqrt(omega0**2 - 0.25 * gamma_total**2)
    lam = complex(-0.5 * gamma_total, omega_d)
    step = config.dt * config.record_decimation
    n_steps = int(math.floor(config.duration / step + 1e-9))
    decay = np.exp(lam * step)

    x0 = config.initial_amplitude
    v0 = config.initial_velocity
    if config.drive.kind == "impulse":
        v0 += config.drive.impulse / m_eff
    z = complex(v0, 0.0) - lam.conjugate() * x0

    noisy = T > 0 and gamma_total > 0
    if noisy:
        chol = _noise_cholesky(lam, gamma_total, 2 * gamma_total * K_B * T / m_eff, step)
    rng = np.random.Generator(np.random.PCG64(int(config.seed)))

    z_all = np.empty(n_steps + 1, dtype=complex)
    z_all[0] = z
    done = 0
    while done < n_steps:
        n = min(_CHUNK, n_steps - done)
        w = np.zeros(n, dtype=complex)
        if noisy:
            g = rng.standard_normal((n, 2)) @ chol.T
            w += g[:, 0] + 1j * g[:, 1]
        if config.drive.kind == "sinusoid":
            t_start = (done + np.arange(n)) * step
            w += _sinusoid_increment(lam, config.drive, m_eff, t_start, step)
        zs, _ = signal.lfilter([1.0], [1.0, -decay], w, zi=np.array([decay * z_all[done]]))
        z_all[done + 1 : done + 1 + n] = zs
        done += n

    x = z_all.imag / omega_d
    if not np.all(np.isfinite(x)):
        bad = int(np.argmax(~np.isfinite(x)))
        raise NumericalError(f"non-finite displacement at sample {bad} (t = {bad * step:g} s)")
    return TimeSeries(t0=0.0, dt=step, samples=x)


# --- estimators ------------------------------------------------------------


@dataclass(frozen=True)
class FitResult:
    omega_fit: float
    gamma_fit: float
    q_fit: float
    amplitude_fit: float
    phase_fit: float
    residual_rms: float
    converged: bool
    q_err: float = math.nan
    gamma_err: float = math.nan
    method: str = ""


def _q_from(omega, gamma):
    return omega / gamma if gamma > 0 else math.inf


def _zero_crossing_frequency(t, x):
    """Angular frequency from linearly interpolated zero crossings."""
    s = np.signbit(x)
    idx = np.nonzero(s[:-1] != s[1:])[0]
    if len(idx) < 2 * MIN_FIT_PERIODS:
        raise ValidationError(
            f"series covers about {len(idx) / 2:.1f} periods; at least {MIN_FIT_PERIODS} are needed"
        )
    frac = x[idx] / (x[idx] - x[idx + 1])
    crossings = t[idx] + frac * (t[idx + 1] - t[idx])
    slope = np.polyfit(np.arange(len(crossings)), crossings, 1)[0]
    return math.pi / slope


def _envelope(x, samples_per_period):
    """Per-period peak magnitudes with parabolic refinement; returns (index, peak)."""
    per = max(int(round(samples_per_period)), 3)
    n_win = len(x) // per
    idx = np.empty(n_win)
    peaks = np.empty(n_win)
    for i in range(n_win):
        seg = np.abs(x[i * per : (i + 1) * per])
        j = int(np.argmax(seg))
        a, offset = seg[j], 0.0
        if 0 < j < per - 1:
            y0, y1, y2 = seg[j - 1], seg[j], seg[j + 1]
            den = y0 - 2 * y1 + y2
            if den < 0:
                offset = 0.5 * (y0 - y2) / den
                a = y1 - 0.25 * (y0 - y2) * offset
        idx[i] = i * per + j + offset
        peaks[i] = a
    return idx, peaks


def _envelope_decay(dt, x, omega):
    """Decay rate, usable record length and whether a noise floor was seen.

    The floor is the median peak over the last tenth of the record. Periods
    whose peak is below ``FLOOR_FACTOR`` times the floor are left out of
    the log-linear regression, and the usable length ends where the
    envelope first falls to that level.
    """
    idx, peaks = _envelope(x, 2 * math.pi / omega / dt)
    n_win = len(peaks)
    floor = np.median(peaks[-max(n_win // 10, 1) :])
    below = np.nonzero(peaks < FLOOR_FACTOR * floor)[0]
    if peaks.max() < FLOOR_FACTOR * floor or len(below) == 0:
        keep = np.ones(n_win, dtype=bool)
        end = len(x)
        floor_seen = False
    else:
        first = int(below[0])
        keep = np.arange(n_win) < first
        end = int(idx[first]) + 1
        floor_seen = True
    if keep.sum() < 3:
        keep[:3] = True
    slope = np.polyfit(idx[keep] * dt, np.log(peaks[keep]), 1)[0]
    return max(-2 * slope, 0.0), end, floor_seen


def _ringdown_model(p, tau):
    c, s, g, w = p
    env = np.exp(-0.5 * g * tau)
    return env * (c * np.cos(w * tau) + s * np.sin(w * tau))


def _fit_nls(tau, xn, omega_est, gamma_est, max_nfev):
    """Damped-cosine least squares; returns (params, residuals, gamma_err, omega_err, success)."""
    span = tau[-1]
    env = np.exp(-0.5 * gamma_est * tau)
    basis = np.column_stack([env * np.cos(omega_est * tau), env * np.sin(omega_est * tau)])
    (c0, s0), *_ = np.linalg.lstsq(basis, xn, rcond=None)

    # Dimensionless parameters: quadratures, gamma * span, (omega - omega_est) * span.
    def unpack(q):
        return q[0], q[1], q[2] / span, omega_est + q[3] / span

    def residual(q):
        return _ringdown_model(unpack(q), tau) - xn

    def jacobian(q):
        c, s, g, w = unpack(q)
        env = np.exp(-0.5 * g * tau)
        cos, sin = np.cos(w * tau), np.sin(w * tau)
        shape = env * (c * cos + s * sin)
        return np.column_stack(
            [env * cos, env * sin, -0.5 * tau / span * shape, tau / span * env * (-c * sin + s * cos)]
        )

    q0 = np.array([c0, s0, gamma_est * span, 0.0])
    sol = optimize.least_squares(
        residual, q0, jac=jacobian, method="lm", xtol=1e-13, ftol=1e-13, gtol=1e-13, max_nfev=max_nfev
    )
    resid = sol.fun
    sigma2 = float(resid @ resid) / max(len(resid) - 4, 1)
    try:
        cov = np.linalg.inv(sol.jac.T @ sol.jac) * sigma2
        gamma_err = math.sqrt(max(cov[2, 2], 0.0)) / span
        omega_err = math.sqrt(max(cov[3, 3], 0.0)) / span
    except np.linalg.LinAlgError:
        gamma_err = omega_err = math.nan
    return unpack(sol.x), resid, gamma_err, omega_err, bool(sol.success)


def _demodulated_amplitudes(x, dt, omega):
    """Complex amplitude averaged over consecutive whole periods."""
    per = int(round(2 * math.pi / omega / dt))
    n = len(x) // per * per
    t = dt * np.arange(n)
    blocks = (x[:n] * np.exp(-1j * omega * t)).reshape(-1, per).mean(axis=1)
    return blocks, per * dt


def covariance_decay(series: TimeSeries, omega_est: float):
    """Decay rate and frequency from lag covariances of the demodulated signal.

    The per-period complex amplitudes b_k of a free ring-down with thermal
    forcing follow b_{k+1} = a b_k + noise with a = exp((-gamma/2 + i dw) P).
    Period averaging correlates neighbouring noise terms, so a is taken as
    the ratio of lag-2 to lag-1 covariances rather than by ordinary
    regression; that ratio is exact for both the decaying signal and the
    stationary thermal part. Returns (gamma, omega, gamma_err, omega_err).
    """
    b, period = _demodulated_amplitudes(series.samples, series.dt, omega_est)
    if len(b) < 4:
        raise ValidationError("too few periods for the covariance estimator")
    lag1 = np.sum(b[1:-1] * np.conj(b[:-2]))
    lag2 = np.sum(b[2:] * np.conj(b[:-2]))
    a = lag2 / lag1
    gamma = -2 * math.log(abs(a)) / period
    omega = omega_est + float(np.angle(a)) / period
    resid = b[1:] - a * b[:-1]
    var_a = float(np.mean(np.abs(resid) ** 2)) / float(np.sum(np.abs(b[:-1]) ** 2))
    rel = math.sqrt(0.5 * var_a) / abs(a)
    return gamma, omega, 2 * rel / period, rel / period


def fit_ringdown(
    series: TimeSeries,
    initial_guess: Optional[FitResult] = None,
    method: str = "auto",
    max_nfev: int = 2000,
) -> FitResult:
    """Recover frequency, decay rate and Q from a ring-down record.

    The model is A exp(-gamma t / 2) cos(omega t + phi). Starting values
    come from zero-crossing timing (frequency), per-period peak regression
    (decay) and a linear solve for the quadratures; least squares then
    refines all four on the part of the record where the envelope stands
    above the noise floor (never fewer than 20 periods).

    ``method``:
      * ``"nls"`` - least squares only.
      * ``"covariance"`` - gamma and omega from :func:`covariance_decay`
        over the whole record; amplitude and phase from least squares.
      * ``"auto"`` - ``"covariance"`` when the record decays into a thermal
        floor, else ``"nls"``. Thermal noise is narrowband at the resonance,
        so least-squares residuals are strongly correlated and the
        least-squares decay rate is biased low; the covariance estimator is
        not.
    """
    if method not in ("auto", "nls", "covariance"):
        raise ValidationError(f"unknown method {method!r}")
    x = series.samples
    if len(x) < 8:
        raise ValidationError("series too short")
    scale = float(np.max(np.abs(x)))
    if scale == 0:
        raise ValidationError("series is identically zero")
    xn = x / scale
    tau_all = series.dt * np.arange(len(x))

    omega_est = _zero_crossing_frequency(tau_all, xn)
    gamma_est, end, floor_seen = _envelope_decay(series.dt, xn, omega_est)
    if initial_guess is not None:
        omega_est, gamma_est = initial_guess.omega_fit, max(initial_guess.gamma_fit, 0.0)
    min_len = int(math.ceil(MIN_FIT_PERIODS * 2 * math.pi / omega_est / series.dt))
    end = min(max(end, min_len), len(x))

    (c, s, gamma, omega), resid, gamma_err, omega_err, success = _fit_nls(
        tau_all[:end], xn[:end], omega_est, gamma_est, max_nfev
    )
    used = "nls"
    if method == "covariance" or (method == "auto" and floor_seen):
        gamma, omega, gamma_err, omega_err = covariance_decay(series, omega)
        used = "covariance"

    q = _q_from(omega, gamma)
    q_err = q * math.hypot(gamma_err / gamma, omega_err / omega) if gamma > 0 else math.nan
    return FitResult(
        omega_fit=omega,
        gamma_fit=gamma,
        q_fit=q,
        amplitude_fit=scale * math.hypot(c, s),
        phase_fit=math.atan2(-s, c),
        residual_rms=scale * math.sqrt(float(resid @ resid) / len(resid)),
        converged=success,
        q_err=q_err,
        gamma_err=gamma_err,
        method=used,
    )


@dataclass(frozen=True)
class Spectrum:
    """One-sided PSD: ``frequency`` in Hz, ``psd`` in m^2/Hz."""

    frequency: np.ndarray
    psd: np.ndarray
    window: str = "hann"

    @property
    def bin_width(self) -> float:
        return float(self.frequency[1] - self.frequency[0])


def power_spectrum(series: TimeSeries, window: str = "hann") -> Spectrum:
    """Mean-removed periodogram, one-sided, density-scaled.

    The density scaling divides by sum(w**2), so integrating the PSD gives
    the window-weighted mean square of the series (the variance for a
    stationary record). Use ``window="boxcar"`` for a free ring-down, whose
    energy is concentrated at the start of the record.
    """
    if len(series) < MIN_SPECTRUM_SAMPLES:
        raise ValidationError(f"need at least {MIN_SPECTRUM_SAMPLES} samples, got {len(series)}")
    f, p = signal.periodogram(
        series.samples, fs=1.0 / series.dt, window=window, detrend="constant", scaling="density"
    )
    return Spectrum(frequency=f, psd=p, window=window)


def lorentzian_psd(omega, omega0, q, amplitude=1.0, background=0.0):
    """amplitude / ((omega0^2 - omega^2)^2 + (omega0 omega / q)^2) + background."""
    omega = np.asarray(omega, dtype=float)
    return amplitude / ((omega0**2 - omega**2) ** 2 + (omega0 * omega / q) ** 2) + background


def _half_max_width(f, p, i_peak):
    half = 0.5 * p[i_peak]
    lo = i_peak
    while lo > 0 and p[lo] > half:
        lo -= 1
    hi = i_peak
    while hi < len(p) - 1 and p[hi] > half:
        hi += 1

    def cross(i, j):
        if p[i] == p[j]:
            return f[i]
        return f[i] + (half - p[i]) * (f[j] - f[i]) / (p[j] - p[i])

    return cross(hi - 1, hi) - cross(lo, lo + 1)


def lorentzian_fit(spectrum: Spectrum, fit_background: bool = False, span_linewidths: float = 20.0) -> FitResult:
    """Fit the mechanical susceptibility lineshape to a PSD.

    The fit minimises log-residuals, which suits the multiplicative scatter
    of periodogram bins. Raises :class:`ResolutionError` when fewer than
    ten bins fall inside the linewidth; ring-down fitting is the method for
    such high-Q modes.
    """
    f = np.asarray(spectrum.frequency, dtype=float)
    p = np.asarray(spectrum.psd, dtype=float)
    df = f[1] - f[0]
    # Locate the peak on a lightly smoothed copy; single periodogram bins
    # scatter by ~100%.
    smooth = np.convolve(p, np.ones(SMOOTH_BINS) / SMOOTH_BINS, mode="same")
    i_peak = int(np.argmax(smooth[1:])) + 1
    f_peak = f[i_peak]
    # The smoothed half-max width is only a starting point; the resolution
    # check is made on the fitted linewidth.
    width = max(_half_max_width(f, smooth, i_peak), BINS_PER_LINEWIDTH * df)
    def fit_window(center, width, starts):
        sel = (np.abs(f - center) <= span_linewidths * width) & (f > 0) & (p > 0)
        fs, ps = f[sel], p[sel]
        u = fs / center  # normalised frequency
        log_ps = np.log(ps)

        def model(q):
            bg = math.exp(q[3]) if fit_background else 0.0
            return lorentzian_psd(u, q[1], math.exp(q[2]), math.exp(q[0]), bg)

        def residual(q):
            return np.log(model(q)) - log_ps

        core_bins = ps[np.abs(fs - center) <= width / 2]
        level = float(np.median(core_bins)) if core_bins.size else float(np.max(ps))
        best = None
        for q_start in starts:
            start = [math.log(level / lorentzian_psd(1.0, 1.0, q_start)), 1.0, math.log(q_start)]
            if fit_background:
                start.append(math.log(max(np.min(ps), 1e-300)))
            trial = optimize.least_squares(residual, start, method="lm", xtol=1e-14, ftol=1e-14, max_nfev=5000)
            if best is None or trial.cost < best.cost:
                best = trial
        return best, fs, ps, model

    # The initial window comes from a noisy half-max estimate, so refit on
    # the window implied by the fitted linewidth until it settles.
    center = f_peak
    starts = [factor * f_peak / width for factor in (0.25, 0.5, 1.0, 2.0, 4.0)]
    for _ in range(6):
        sol, fs, ps, model = fit_window(center, width, starts)
        new_center = center * sol.x[1]
        new_width = max(new_center / math.exp(sol.x[2]), BINS_PER_LINEWIDTH * df)
        settled = abs(new_width / width - 1) < 1e-3 and abs(new_center - center) < 0.1 * df
        # rescale the solution to the new normalisation for the next pass
        center, width = new_center, new_width
        starts = [math.exp(sol.x[2]) * factor for factor in (0.5, 1.0, 2.0)]
        if settled:
            break
    f_peak = center / sol.x[1]
    u0 = sol.x[1]
    q = math.exp(sol.x[2])
    omega0 = 2 * math.pi * f_peak * u0
    gamma = omega0 / q
    if df > omega0 / (2 * math.pi) / (BINS_PER_LINEWIDTH * q):
        raise ResolutionError(
            f"fitted linewidth {omega0 / q / (2 * math.pi):g} Hz is under {BINS_PER_LINEWIDTH} bins of {df:g} Hz"
        )
    dof = max(len(ps) - len(sol.x), 1)
    sigma2 = float(sol.fun @ sol.fun) / dof
    try:
        cov = np.linalg.inv(sol.jac.T @ sol.jac) * sigma2
        q_err = q * math.sqrt(max(cov[2, 2], 0.0))
    except np.linalg.LinAlgError:
        q_err = math.nan
    # amplitude in physical units: psd = A / ((w0^2 - w^2)^2 + ...) with w in rad/s
    amplitude = math.exp(sol.x[0]) * (2 * math.pi * f_peak) ** 4
    return FitResult(
        omega_fit=omega0,
        gamma_fit=gamma,
        q_fit=q,
        amplitude_fit=amplitude,
        phase_fit=math.nan,
        residual_rms=float(np.sqrt(np.mean((model(sol.x) - ps) ** 2))),
        converged=bool(sol.success),
        q_err=q_err,
        gamma_err=gamma * q_err / q if q_err == q_err else math.nan,
        method="lorentzian",
    )


