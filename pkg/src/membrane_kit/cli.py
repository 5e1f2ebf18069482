"""Command-line entry point ``membrane-kit``.

Every report is a table of ``quantity, value, unit, paper_stated``; the last
column is empty unless a quoted reference value disagrees with the formula.
Exit codes: 0 success, 1 validation or usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

from . import __version__, casimir, helium, membrane, noise, readout, ringdown
from .errors import MembraneKitError, NumericalError
from .experiment import emit, models, sweep
from .experiment.config import AXES, ExperimentConfig, GeometryConfig, dump_config, load_config

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


Row = tuple[str, float, str, Optional[float]]


def _load(path: Optional[str]) -> ExperimentConfig:
    if path is None:
        return load_config("[membrane]\n")
    with open(path) as fh:
        return load_config(fh.read())


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _render(rows: list[Row], fmt: str, config: ExperimentConfig, title: str) -> str:
    prov = emit.provenance(config)
    if fmt == "json":
        doc = {
            "report": title,
            "provenance": prov,
            "rows": [{"quantity": q, "value": float(v), "unit": u, "paper_stated": p} for q, v, u, p in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    lines = [f"# provenance {k}={v}" for k, v in prov.items()]
    lines.append(f"# report={title}")
    lines.append("quantity,value,unit,paper_stated")
    for q, v, u, p in rows:
        lines.append(f"{q},{float(v)!r},{u},{'' if p is None else repr(p)}")
    return "\n".join(lines) + "\n"


# --- reports ---------------------------------------------------------------


def noise_rows(config: ExperimentConfig) -> list[Row]:
    mode = models.mode_parameters(config)
    T = config.temperature
    q = models.total_q(config)
    s_f = noise.force_noise_density(mode.k, T, mode.omega0, q)
    s_x = noise.displacement_noise_psd(mode.omega0, mode.m_eff, mode.omega0, q, T)
    rows: list[Row] = [
        ("k", mode.k, "N/m", 30.0 if config.membrane.override_k is None else None),
        ("f0", mode.f0, "Hz", None),
        ("m_eff", mode.m_eff, "kg", None),
        ("temperature", T, "K", None),
        ("q_total", q, "1", None),
        ("s_f", s_f, "N/Hz^0.5", None),
        ("min_detectable_force_1hz", noise.min_detectable_force(s_f), "N", None),
        ("s_x_peak", float(s_x), "m^2/Hz", None),
        ("x_rms", membrane.thermal_rms_amplitude(mode.k, T), "m", None),
    ]
    # reference scenario: k = 30 N/m, f0 = 1e5 Hz
    w = 2 * math.pi * 1e5
    rows.append(("s_f_ref_300K_q1e6", noise.force_noise_density(30.0, 300.0, w, 1e6), "N/Hz^0.5", 7e-16))
    rows.append(("s_f_ref_0.3K_q1e7", noise.force_noise_density(30.0, 0.3, w, 1e7), "N/Hz^0.5", 7e-18))
    return rows


def casimir_rows(config: ExperimentConfig) -> list[Row]:
    geom_cfg = config.geometry or GeometryConfig()
    T = config.temperature
    medium = config.environment.medium
    report = casimir.regime_report(geom_cfg.geometry(), T, medium, geom_cfg.coefficient)
    d = geom_cfg.separation
    rows: list[Row] = [
        ("radius", geom_cfg.radius, "m", None),
        ("separation", d, "m", None),
        ("temperature", T, "K", None),
        ("force_thermal", report.force_thermal, "N", None),
        ("force_zero_t", report.force_zero_t, "N", None),
        ("thermal_dominates", float(report.dominant == "thermal"), "bool", None),
        ("thermal_crossover_length", report.crossover_length, "m", None),
        ("pressure_plane_plane", casimir.thermal_plane_plane_pressure(T, d, medium), "Pa", None),
    ]
    if report.force_phonon is not None:
        rows.append(("force_phonon", report.force_phonon, "N", None))
        rows.append(("phonon_zero_t_suppression", casimir.phonon_zero_temp_suppression(), "1", None))
    s_f = models.force_noise(config)
    rows.append(("s_f", s_f, "N/Hz^0.5", None))
    rows.append(
        (
            "snr_unity_distance",
            noise.snr_unity_distance(
                geom_cfg.radius,
                T,
                s_f,
                force_model=lambda R, T_, d_: casimir.thermal_sphere_plane(R, T_, d_, geom_cfg.coefficient),
            ),
            "m",
            None,
        )
    )
    rows.append(("snr_unity_distance_ref", noise.snr_unity_distance(1e-2, 300.0, 7e-16), "m", 26e-6))
    return rows


def helium_rows(config: ExperimentConfig) -> list[Row]:
    env = config.environment
    if not env.is_helium:
        raise MembraneKitError("helium report needs [environment] medium = helium")
    T, x3 = env.temperature, env.he3_fraction
    spec = config.membrane
    mode = models.mode_parameters(config)
    helium.check_temperature(T, env.medium_valid_below)
    g_ph = helium.phonon_damping_rate(T, spec.density, spec.thickness, warn=False)
    g_he3 = helium.he3_damping_rate(T, x3, spec.density, spec.thickness, warn=False)
    amp = config.sim.initial_amplitude if config.sim else spec.max_linear_amplitude
    rows: list[Row] = [
        ("temperature", T, "K", None),
        ("he3_fraction", x3, "1", None),
        ("gamma_phonon", g_ph, "1/s", None),
        ("q_phonon", mode.omega0 / g_ph, "1", None),
        ("gamma_he3", g_he3, "1/s", None),
        ("q_total", models.total_q(config), "1", None),
        (
            "temperature_phonon_q_1e7",
            helium.phonon_q_temperature(1e7, mode.omega0, spec.density, spec.thickness),
            "K",
            30e-3,
        ),
        ("he3_thermal_wavelength", helium.thermal_wavelength_he3(T), "m", None),
        ("temperature_wavelength_14nm", helium.thermal_wavelength_temperature(14e-9), "K", None),
        ("membrane_velocity", helium.membrane_velocity(amp, mode.omega0), "m/s", None),
        ("velocity_guard_valid", float(helium.landau_velocity_guard(amp, mode.omega0) == "valid"), "bool", None),
    ]
    return rows


def readout_rows(config: ExperimentConfig) -> list[Row]:
    ro = config.readout or readout.CapacitiveReadout()
    mode = models.mode_parameters(config)
    T = config.temperature
    x_rms = membrane.thermal_rms_amplitude(mode.k, T)
    frac = readout.capacitive_fractional_change(x_rms, ro.gap)
    ref_frac = readout.capacitive_fractional_change(0.01e-9, 1e-4)
    return [
        ("gap", ro.gap, "m", None),
        ("bias_voltage", ro.bias_voltage, "V", None),
        ("x_rms", x_rms, "m", None),
        ("fractional_capacitance_change", frac, "1", None),
        ("signal_voltage", readout.capacitive_signal_voltage(ro.bias_voltage, frac), "V", None),
        ("fractional_capacitance_change_ref_0.01nm", ref_frac, "1", 1e-5),
        ("signal_voltage_ref_1V", readout.capacitive_signal_voltage(1.0, ref_frac), "V", 1e-6),
        ("rms_ratio_300K_to_0.3K", readout.cryogenic_requirement_factor(300.0, 0.3), "1", 100.0),
    ]


# --- ring-down ---------------------------------------------------------------


def sim_config(config: ExperimentConfig, seed: Optional[int] = None) -> tuple[ringdown.SimConfig, float]:
    """SimConfig from the [sim] section; returns it with the total damping rate.

    Unset ``dt`` defaults to period/100; unset ``duration`` to five energy
    decay times, capped at 0.2 s.
    """
    from .experiment.config import SimSection

    section = config.sim or SimSection()
    mode = models.mode_parameters(config)
    gamma = membrane.combine_q(models.damping_budget(config)).gamma_total
    dt = section.dt if section.dt is not None else (2 * math.pi / mode.omega0) / ringdown.MIN_PERIODS_PER_STEP
    duration = section.duration if section.duration is not None else min(5.0 / gamma, 0.2)
    cfg = ringdown.SimConfig(
        dt=dt,
        duration=duration,
        seed=section.seed if seed is None else seed,
        initial_amplitude=section.initial_amplitude,
        initial_velocity=section.initial_velocity,
        drive=section.make_drive(mode.f0),
        record_decimation=section.record_decimation,
    )
    return cfg, gamma


def run_simulation(config: ExperimentConfig, seed: Optional[int] = None):
    cfg, gamma = sim_config(config, seed)
    mode = models.mode_parameters(config)
    series = ringdown.simulate(
        mode.m_eff,
        mode.k,
        gamma,
        config.temperature,
        cfg,
        max_linear_amplitude=config.membrane.max_linear_amplitude,
    )
    extras = {
        "rng": ringdown.RNG_ALGORITHM,
        "seed": cfg.seed,
        "q_configured": repr(mode.omega0 / gamma),
        "f0_configured": repr(mode.f0),
        "temperature": repr(config.temperature),
        "config_sha256": emit.provenance(config)["config_sha256"],
    }
    return series, extras


def _read_trace_header(path: str) -> dict[str, str]:
    header = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if body.startswith("t0="):
                continue
            key, sep, value = body.partition("=")
            if sep:
                header[key.strip()] = value.strip()
    return header


def fit_rows(path: str, method: str) -> list[Row]:
    series = ringdown.read_timeseries(path)
    fit = ringdown.fit_ringdown(series, method=method)
    rows: list[Row] = [
        ("f_fit", fit.omega_fit / (2 * math.pi), "Hz", None),
        ("gamma_fit", fit.gamma_fit, "1/s", None),
        ("q_fit", fit.q_fit, "1", None),
        ("q_err", fit.q_err, "1", None),
        ("amplitude_fit", fit.amplitude_fit, "m", None),
        ("phase_fit", fit.phase_fit, "rad", None),
        ("residual_rms", fit.residual_rms, "m", None),
        ("converged", float(fit.converged), "bool", None),
        ("covariance_estimator", float(fit.method == "covariance"), "bool", None),
    ]
    header = _read_trace_header(path)
    if "q_configured" in header:
        q_conf = float(header["q_configured"])
        rows.append(("q_configured", q_conf, "1", None))
        rows.append(("q_relative_error", fit.q_fit / q_conf - 1, "1", None))
    return rows


# --- dispatch ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="experiment config file")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=emit.FORMATS, default="csv")

    parser = _Parser(prog="membrane-kit", description="Membrane resonator force-experiment toolkit.")
    parser.add_argument("--version", action="version", version=f"membrane-kit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (
        ("noise", "thermal force noise table"),
        ("casimir", "sphere-plane Casimir force table"),
        ("helium", "superfluid helium damping table"),
        ("readout", "capacitive readout estimate"),
        ("config", "print the effective configuration"),
    ):
        sub.add_parser(name, parents=[common], help=text)
    sw = sub.add_parser("sweep", parents=[common], help="parameter sweep table")
    sw.add_argument("--axis", choices=AXES)

    rd = sub.add_parser("ringdown", help="simulate or fit ring-down traces")
    rd_sub = rd.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sim = rd_sub.add_parser("simulate", parents=[common])
    sim.add_argument("--seed", type=int)
    fit = rd_sub.add_parser("fit", parents=[common])
    fit.add_argument("trace", help="trace CSV written by 'ringdown simulate'")
    fit.add_argument("--method", choices=("auto", "nls", "covariance"), default="auto")
    return parser


def _run(args) -> None:
    if args.command == "ringdown" and args.action == "fit":
        config = _load(args.config)
        _write(_render(fit_rows(args.trace, args.method), args.format, config, "ringdown-fit"), args.out)
        return
    config = _load(args.config)
    if args.command == "config":
        _write(dump_config(config), args.out)
    elif args.command == "sweep":
        result = sweep.run_sweep(config, args.axis)
        result.provenance = emit.provenance(config)
        _write(emit.emit(result, args.format), args.out)
    elif args.command == "ringdown":
        series, extras = run_simulation(config, args.seed)
        if args.out is None:
            raise MembraneKitError("ringdown simulate needs --out")
        ringdown.write_timeseries(series, args.out, extras)
    else:
        builder = {"noise": noise_rows, "casimir": casimir_rows, "helium": helium_rows, "readout": readout_rows}
        _write(_render(builder[args.command](config), args.format, config, args.command), args.out)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _run(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except MembraneKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
