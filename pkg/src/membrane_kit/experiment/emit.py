"""CSV and JSON serialisation of sweep results.

CSV layout::

    # provenance tool=membrane-kit 0.1.0
    # provenance config_sha256=...
    # note snr_unity_crossing=0.000279 m
    # axis=separation_d
    separation_d [m],force_thermal [N],...
    1e-06,7.35e-09,...

Values are written with ``repr`` so parsing returns identical floats.
"""

from __future__ import annotations

import json
from typing import Optional

from .. import __version__, core
from ..errors import ValidationError
from .config import ExperimentConfig, config_hash
from .sweep import SweepResult

FORMATS = ("csv", "json")


def provenance(config: Optional[ExperimentConfig]) -> dict[str, str]:
    prov = {"tool": f"membrane-kit {__version__}", "constant_set": core.CONSTANT_SET}
    if config is not None:
        prov["config_sha256"] = config_hash(config)
    return prov


def _check_value(key: str, value: str) -> None:
    if "\n" in key or "\n" in value or "=" in key:
        raise ValidationError(f"header entry {key!r} cannot be written on one line")


def to_csv(result: SweepResult) -> str:
    lines = []
    for key, value in result.provenance.items():
        _check_value(key, value)
        lines.append(f"# provenance {key}={value}")
    for key, value in result.notes.items():
        _check_value(key, value)
        lines.append(f"# note {key}={value}")
    lines.append(f"# axis={result.axis}")
    lines.append(",".join(f"{c} [{u}]" for c, u in zip(result.columns, result.units)))
    for row in result.rows:
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> SweepResult:
    prov, notes, axis = {}, {}, None
    columns, units, rows = None, None, []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            kind, _, rest = body.partition(" ")
            if kind in ("provenance", "note"):
                key, sep, value = rest.partition("=")
                if not sep:
                    raise ValidationError(f"line {n}: malformed {kind} header")
                (prov if kind == "provenance" else notes)[key] = value
            elif body.startswith("axis="):
                axis = body[5:]
            continue
        if columns is None:
            columns, units = [], []
            for cell in line.split(","):
                name, sep, unit = cell.strip().partition(" [")
                if not sep or not unit.endswith("]"):
                    raise ValidationError(f"line {n}: column {cell!r} lacks a [unit] tag")
                columns.append(name)
                units.append(unit[:-1])
            continue
        cells = line.split(",")
        if len(cells) != len(columns):
            raise ValidationError(f"line {n}: expected {len(columns)} values, got {len(cells)}")
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise ValidationError(f"line {n}: {exc}") from None
    if columns is None:
        raise ValidationError("no column header found")
    return SweepResult(axis or columns[0], columns, units, rows, notes, prov)


def to_json(result: SweepResult) -> str:
    doc = {
        "axis": result.axis,
        "provenance": result.provenance,
        "notes": result.notes,
        "units": dict(zip(result.columns, result.units)),
        "columns": {c: [row[i] for row in result.rows] for i, c in enumerate(result.columns)},
    }
    return json.dumps(doc, indent=2) + "\n"


def from_json(text: str) -> SweepResult:
    try:
        doc = json.loads(text)
        columns = list(doc["columns"])
        units = [doc["units"][c] for c in columns]
        data = [doc["columns"][c] for c in columns]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValidationError(f"malformed sweep JSON: {exc}") from None
    if len({len(col) for col in data}) > 1:
        raise ValidationError("sweep JSON columns differ in length")
    rows = [list(map(float, r)) for r in zip(*data)]
    return SweepResult(doc.get("axis", columns[0]), columns, units, rows, doc.get("notes", {}), doc.get("provenance", {}))


def emit(result: SweepResult, fmt: str = "csv") -> str:
    if fmt == "csv":
        return to_csv(result)
    if fmt == "json":
        return to_json(result)
    raise ValidationError(f"format must be one of {FORMATS}, got {fmt!r}")


def parse(text: str, fmt: str = "csv") -> SweepResult:
    if fmt == "csv":
        return from_csv(text)
    if fmt == "json":
        return from_json(text)
    raise ValidationError(f"format must be one of {FORMATS}, got {fmt!r}")
