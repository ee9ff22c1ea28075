"""
Experiment configs: loading, validation, sweep expansion and the runner.

A config is a JSON document validated against
schema/experiment.schema.json.  Any value in it may reference a sweep
variable as "$name", either as the whole value or inside a text form
("zz:3,5,$eps", "hourglass:n=$n").  The sweep grid is the cartesian
product of the `sweep` lists in key order; a config without a sweep runs
one cell, and an empty list yields no cells at all.

Cells run in a process pool (SPT_THREADS caps it; 1 runs in-process) and
their rows are written in sweep order, so the CSV does not depend on the
worker count.  Every row starts with the cell index, the seed and the
sweep values; the remaining columns are fixed per protocol (COLUMNS).

    doc = load_config("fig3_diamond.json")
    result = run_experiment(doc, out_dir="results")
    result.csv_path, result.manifest_path
"""

from __future__ import annotations

import csv
import functools
import hashlib
import io
import itertools
import json
import logging
import math
import multiprocessing
import platform
import re
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Iterator, Mapping, Sequence, TextIO

import jsonschema
import numpy as np
import scipy

from .calibration import DEFAULT_SHOTS as CALIBRATION_SHOTS
from .calibration import calibrate_path
from .defs import InputState
from .errors import ConfigError
from .graphs import GraphSpec, compile_preparation, graph_from_json, parse_graph
from .groundstate import HamiltonianFamily, fidelity_vs_alpha_sweep
from .noise import ErrorSpec, parse_error
from .settings import Settings
from .sim import make_rng, prepare
from .spt import entanglement_spectrum, sop_sweep
from .teleport import (
    binomial_stderr,
    classify_channel,
    fidelity_exact,
    run_teleport,
    sample_inputs,
    tomography_exact,
    tomography_teleport,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "v1"
DEFAULT_SHOTS = 1000

_PLACEHOLDER = re.compile(r"\$([A-Za-z_][A-Za-z0-9_]*)")

COLUMNS: dict[str, list[str]] = {
    "teleport": ["graph", "errors", "path", "input", "shots", "fidelity", "stderr", "channel_class"],
    "teleport_exact": ["graph", "errors", "path", "input", "shots", "fidelity", "stderr", "channel_class"],
    "tomography": ["graph", "errors", "path", "input", "shots",
                   "bloch_x", "bloch_y", "bloch_z", "fidelity", "clipped"],
    "spectrum": ["graph", "errors", "cut", "rank", "eigenvalues", "multiplicities"],
    "sop": ["family", "L", "alpha", "path", "sop", "degenerate"],
    "gslab": ["family", "n", "N", "alpha", "path", "inputs", "shots", "fidelity", "stderr", "degenerate"],
    "calibrate": ["graph", "errors", "path", "shots", "fidelities", "mean", "chosen", "status"],
}


# ═══════════════════════════════════════════════════════════════════
# Text forms
# ═══════════════════════════════════════════════════════════════════

_NAMED_INPUTS: dict[str, Callable[[], InputState]] = {
    "zero": InputState.zero,
    "one": InputState.one,
    "plus": InputState.plus,
    "minus": InputState.minus,
}


def _float(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{what} must be a number, got {text!r}") from None


def parse_input(text: str) -> InputState:
    """`zero`, `one`, `plus`, `minus`, `polar:θ,φ` or `azimuth:φ`."""
    text = text.strip()
    if text in _NAMED_INPUTS:
        return _NAMED_INPUTS[text]()
    kind, sep, rest = text.partition(":")
    if sep and kind == "polar":
        parts = [p.strip() for p in rest.split(",")]
        if len(parts) not in (1, 2):
            raise ConfigError(f"polar input takes θ[,φ], got {rest!r}")
        polar = _float(parts[0], "polar angle")
        azimuth = _float(parts[1], "azimuth") if len(parts) == 2 else 0.0
        return InputState(polar, azimuth)
    if sep and kind == "azimuth":
        return InputState.in_plane(_float(rest.strip(), "azimuth"))
    raise ConfigError(f"unknown input {text!r} (expected zero, one, plus, minus, polar:θ,φ or azimuth:φ)")


def parse_range(text: str) -> list[float]:
    """`start:stop:step`, stop included within half a step, or a comma list."""
    text = text.strip()
    if ":" not in text:
        return [_float(t, "value") for t in text.split(",") if t.strip()]
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"range {text!r} is not of the form start:stop:step")
    start, stop, step = (_float(p, "range bound") for p in parts)
    if step <= 0:
        raise ConfigError(f"range step must be positive, got {step!r}")
    if stop < start:
        raise ConfigError(f"range {text!r} is empty (stop < start)")
    count = math.floor((stop - start) / step + 0.5) + 1
    return [round(start + i * step, 12) for i in range(count)]


def parse_int_list(text: str) -> list[int]:
    values = parse_range(text)
    if any(v != int(v) for v in values):
        raise ConfigError(f"expected integers, got {text!r}")
    return [int(v) for v in values]


def _numbers(value: Any, field: str, cast: Callable[[Any], Any] = float) -> list[Any]:
    if isinstance(value, str):
        return parse_int_list(value) if cast is int else parse_range(value)
    if isinstance(value, (list, tuple)):
        return [cast(v) for v in value]
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [cast(value)]
    raise ConfigError(f"expected a number, a list or a range, got {value!r}", field)


# ═══════════════════════════════════════════════════════════════════
# Loading and validation
# ═══════════════════════════════════════════════════════════════════

@functools.lru_cache(maxsize=1)
def experiment_schema() -> dict[str, Any]:
    text = resources.files("spt_teleport").joinpath("schema/experiment.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _placeholders(obj: Any, path: tuple[str, ...] = ()) -> Iterator[tuple[str, tuple[str, ...]]]:
    if isinstance(obj, str):
        for m in _PLACEHOLDER.finditer(obj):
            yield m.group(1), path
    elif isinstance(obj, Mapping):
        for k, v in obj.items():
            yield from _placeholders(v, path + (str(k),))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            yield from _placeholders(v, path + (str(i),))


def validate_config(doc: Any) -> dict[str, Any]:
    """Check `doc` against the schema and the sweep; returns it unchanged."""
    validator = jsonschema.Draft202012Validator(experiment_schema())
    errors = list(validator.iter_errors(doc))
    if errors:
        best = jsonschema.exceptions.best_match(errors)
        field = ".".join(str(p) for p in best.absolute_path) or "<root>"
        raise ConfigError(best.message, field)

    sweep = doc.get("sweep", {})
    body = {k: v for k, v in doc.items() if k not in ("sweep", "description")}
    for name, path in _placeholders(body):
        if name not in sweep:
            raise ConfigError(f"placeholder ${name} has no sweep values", ".".join(path))
    return doc


def load_config(source: str | Path | Mapping[str, Any]) -> dict[str, Any]:
    """Validated config from a JSON file path or an already parsed document."""
    if isinstance(source, Mapping):
        return validate_config(json.loads(json.dumps(source)))
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    return validate_config(doc)


# ═══════════════════════════════════════════════════════════════════
# Sweep expansion
# ═══════════════════════════════════════════════════════════════════

def expand_sweep(doc: Mapping[str, Any]) -> list[dict[str, Any]]:
    """One mapping of sweep values per cell, in sweep-key order."""
    sweep = doc.get("sweep") or {}
    if not sweep:
        return [{}]
    keys = list(sweep)
    return [dict(zip(keys, combo)) for combo in itertools.product(*(sweep[k] for k in keys))]


def substitute(obj: Any, values: Mapping[str, Any]) -> Any:
    """Replace "$name" references by sweep values, recursively."""
    if isinstance(obj, str):
        m = _PLACEHOLDER.fullmatch(obj)
        if m and m.group(1) in values:
            return values[m.group(1)]
        return _PLACEHOLDER.sub(lambda m: str(values.get(m.group(1), m.group(0))), obj)
    if isinstance(obj, Mapping):
        return {k: (v if k == "sweep" else substitute(v, values)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [substitute(v, values) for v in obj]
    return obj


# ═══════════════════════════════════════════════════════════════════
# Protocols, one cell each
# ═══════════════════════════════════════════════════════════════════

def _graphs(doc: Mapping[str, Any]) -> list[GraphSpec]:
    items = doc["graph"] if isinstance(doc["graph"], list) else [doc["graph"]]
    return [graph_from_json(g) if isinstance(g, Mapping) else parse_graph(g) for g in items]


def _errors(doc: Mapping[str, Any]) -> list[ErrorSpec]:
    out = []
    for i, e in enumerate(doc.get("errors", [])):
        try:
            out.append(parse_error(e))
        except ConfigError as exc:
            raise ConfigError(str(exc), f"errors.{i}") from None
    return out


def _error_label(errors: Sequence[ErrorSpec]) -> str:
    return ";".join(str(e) for e in errors)


def _inputs(doc: Mapping[str, Any], seed: int, cell: int) -> tuple[list[InputState], str]:
    if "input" in doc:
        s = parse_input(doc["input"])
        return [s], s.label()
    spec = doc["inputs"]
    count = int(spec["count"])
    if count < 1:
        raise ConfigError(f"input count must be ≥ 1, got {count}", "inputs.count")
    dist = spec.get("distribution", "bloch")
    return sample_inputs(make_rng(seed, cell), count, dist), f"{dist}x{count}"


def _shots(doc: Mapping[str, Any], default: int | None) -> int | None:
    return doc["shots"] if "shots" in doc else default


def _teleport(doc: Mapping[str, Any], seed: int, cell: int, exact: bool) -> list[dict[str, Any]]:
    errors = _errors(doc)
    states, input_label = _inputs(doc, seed, cell)
    shots = None if exact else _shots(doc, DEFAULT_SHOTS)
    rows = []
    for gi, g in enumerate(_graphs(doc)):
        for pi, pid in enumerate(doc["paths"]):
            if shots is None:
                fids = [fidelity_exact(g, errors, s, pid) for s in states]
                mean = float(np.mean(fids))
                stderr = float(np.std(fids) / math.sqrt(len(fids))) if len(fids) > 1 else 0.0
            else:
                fids = [run_teleport(g, errors, s, pid, shots, seed, (cell, gi, pi, ii)).fidelity
                        for ii, s in enumerate(states)]
                mean = float(np.mean(fids))
                stderr = binomial_stderr(mean, shots * len(fids))
            rows.append({
                "graph": g.name, "errors": _error_label(errors), "path": pid, "input": input_label,
                "shots": "exact" if shots is None else shots, "fidelity": mean, "stderr": stderr,
                "channel_class": classify_channel(mean).value,
            })
    return rows


def _tomography(doc: Mapping[str, Any], seed: int, cell: int) -> list[dict[str, Any]]:
    errors = _errors(doc)
    states, _ = _inputs(doc, seed, cell)
    shots = _shots(doc, DEFAULT_SHOTS)
    rows = []
    for gi, g in enumerate(_graphs(doc)):
        for pi, pid in enumerate(doc["paths"]):
            for ii, s in enumerate(states):
                if shots is None:
                    res = tomography_exact(g, errors, s, pid)
                else:
                    res = tomography_teleport(g, errors, s, pid, shots, seed, (cell, gi, pi, ii))
                rows.append({
                    "graph": g.name, "errors": _error_label(errors), "path": pid, "input": s.label(),
                    "shots": "exact" if shots is None else shots,
                    "bloch_x": float(res.bloch[0]), "bloch_y": float(res.bloch[1]), "bloch_z": float(res.bloch[2]),
                    "fidelity": res.fidelity, "clipped": res.clipped,
                })
    return rows


def _spectrum(doc: Mapping[str, Any], seed: int, cell: int) -> list[dict[str, Any]]:
    errors = _errors(doc)
    cut = [int(v) for v in doc["cut"]]
    rows = []
    for g in _graphs(doc):
        state = prepare(compile_preparation(g, errors))
        spec = entanglement_spectrum(state, cut, doc.get("tol", 1e-8))
        rows.append({
            "graph": g.name, "errors": _error_label(errors), "cut": ",".join(map(str, spec.cut[0])),
            "rank": len(spec.nonzero), "eigenvalues": " ".join(f"{v:.12g}" for v in spec.nonzero),
            "multiplicities": " ".join(map(str, spec.multiplicities)),
        })
    return rows


def _sop(doc: Mapping[str, Any], seed: int, cell: int) -> list[dict[str, Any]]:
    return sop_sweep(HamiltonianFamily.parse(doc["family"]),
                     _numbers(doc["L"], "L", int), _numbers(doc["alpha"], "alpha"),
                     doc.get("path", "upper"))


def _gslab(doc: Mapping[str, Any], seed: int, cell: int) -> list[dict[str, Any]]:
    inputs = doc["inputs"]
    return fidelity_vs_alpha_sweep(
        HamiltonianFamily.parse(doc["family"]),
        _numbers(doc["alpha"], "alpha"), _numbers(doc["n"], "n", int),
        int(inputs["count"]), _shots(doc, 100), seed,
        tuple(doc.get("paths", ("upper", "lower"))), inputs.get("distribution", "xy"),
    )


def _calibrate(doc: Mapping[str, Any], seed: int, cell: int) -> list[dict[str, Any]]:
    errors = _errors(doc)
    shots = _shots(doc, CALIBRATION_SHOTS)
    rows = []
    for g in _graphs(doc):
        res = calibrate_path(g, errors, shots=shots, seed=seed, paths=doc.get("paths"))
        means = res.means
        for pid, fids in res.fidelities.items():
            rows.append({
                "graph": g.name, "errors": _error_label(errors), "path": pid,
                "shots": "exact" if shots is None else shots,
                "fidelities": " ".join(f"{f:.12g}" for f in fids), "mean": means[pid],
                "chosen": res.chosen or "", "status": res.status,
            })
    return rows


_PROTOCOLS: dict[str, Callable[[Mapping[str, Any], int, int], list[dict[str, Any]]]] = {
    "teleport": functools.partial(_teleport, exact=False),
    "teleport_exact": functools.partial(_teleport, exact=True),
    "tomography": _tomography,
    "spectrum": _spectrum,
    "sop": _sop,
    "gslab": _gslab,
    "calibrate": _calibrate,
}


def run_cell(task: tuple[Mapping[str, Any], int]) -> list[dict[str, Any]]:
    """Rows of one substituted cell; module-level so pool workers can import it."""
    doc, cell = task
    return _PROTOCOLS[doc["protocol"]](doc, int(doc.get("seed", 0)), cell)


# ═══════════════════════════════════════════════════════════════════
# Runner
# ═══════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class ExperimentResult:
    name: str
    protocol: str
    columns: list[str]
    rows: list[dict[str, Any]]
    wall_time: float
    csv_path: Path | None = None
    manifest_path: Path | None = None


def columns_for(doc: Mapping[str, Any]) -> list[str]:
    cols = ["cell", "seed", *(doc.get("sweep") or {})]
    return cols + [c for c in COLUMNS[doc["protocol"]] if c not in cols]


def config_hash(doc: Mapping[str, Any]) -> str:
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_csv(out: TextIO, columns: Sequence[str], rows: Sequence[Mapping[str, Any]]) -> None:
    w = csv.DictWriter(out, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: row.get(k, "") for k in columns})


def _versions() -> dict[str, str]:
    from . import __version__

    return {
        "spt_teleport": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "jsonschema": getattr(jsonschema, "__version__", "unknown"),
    }


def run_experiment(config: str | Path | Mapping[str, Any], out_dir: str | Path | None = None,
                   settings: Settings | None = None) -> ExperimentResult:
    """Run every sweep cell; with `out_dir`, write <name>.csv and <name>.manifest.json."""
    doc = load_config(config)
    settings = settings or Settings.from_env()
    seed = int(doc.get("seed", 0))
    cells = expand_sweep(doc)
    tasks = [(substitute(doc, values), i) for i, values in enumerate(cells)]

    workers = min(settings.threads, len(tasks))
    logger.info("%s: %d cells (%s), %d worker(s)", doc["name"], len(tasks), doc["protocol"], max(workers, 1))
    start = time.perf_counter()
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(run_cell, tasks)
    else:
        results = [run_cell(t) for t in tasks]
    wall = time.perf_counter() - start

    rows = []
    for (_, i), values, cell_rows in zip(tasks, cells, results):
        for r in cell_rows:
            rows.append({"cell": i, "seed": seed, **values, **r})
    columns = columns_for(doc)
    logger.info("%s: %d rows in %.2fs", doc["name"], len(rows), wall)

    result = ExperimentResult(doc["name"], doc["protocol"], columns, rows, wall)
    if out_dir is None:
        return result

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    write_csv(buf, columns, rows)
    csv_path = out / f"{doc['name']}.csv"
    csv_path.write_text(buf.getvalue(), encoding="utf-8")
    manifest = {
        "name": doc["name"],
        "protocol": doc["protocol"],
        "schema_version": SCHEMA_VERSION,
        "config_sha256": config_hash(doc),
        "seed": seed,
        "cells": len(tasks),
        "rows": len(rows),
        "columns": columns,
        "csv": csv_path.name,
        "csv_sha256": hashlib.sha256(buf.getvalue().encode("utf-8")).hexdigest(),
        "versions": _versions(),
        "threads": max(workers, 1),
        "wall_time_s": round(wall, 6),
        "created_utc": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
    }
    manifest_path = out / f"{doc['name']}.manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return ExperimentResult(doc["name"], doc["protocol"], columns, rows, wall, csv_path, manifest_path)
