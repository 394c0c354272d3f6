"""Deterministic report assembly and serialization.

Reports are JSON documents with a frozen schema id.  The ``results`` section
is a pure function of (command, config, seed): floats are serialized with
shortest round-trip decimals and keys are sorted, so re-running a command
byte-reproduces it.  Wall time and other volatile data live outside
``results``.  CSV output is a flat projection of tabular ``lines``.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

SCHEMA = "entloc-report/v1"


@dataclass
class RunConfig:
    """Serializable knobs of one CLI invocation (echoed into every report)."""

    command: str
    seed: int = 42
    tol_class: float = 1e-9
    tol_rank: float = 1e-8
    witness_threshold: float = 1e-6
    samples: int = 1000
    budget: int = 10_000
    fmt: str = "json"
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["extra"] = {k: _plain(v) for k, v in self.extra.items()}
        return d


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, np.ndarray):
        return state_json(v)
    return v


def complex_pair(z: complex) -> list[float]:
    """Canonical JSON form of a complex number: ``[re, im]``."""
    z = complex(z)
    return [z.real, z.imag]


def state_json(psi: np.ndarray) -> list[list[float]]:
    return [complex_pair(z) for z in np.asarray(psi, dtype=complex)]


def build_report(config: RunConfig, results: dict, summary: str, wall_time_s: float) -> dict:
    from . import __version__

    return {
        "schema": SCHEMA,
        "version": __version__,
        "config": config.to_dict(),
        "results": results,
        "summary": summary,
        "wall_time_s": wall_time_s,
    }


def results_bytes(report: dict) -> bytes:
    """Canonical bytes of the reproducible section."""
    return json.dumps(report["results"], sort_keys=True, separators=(",", ":")).encode()


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def _scalar_row(d: dict, prefix: str = "") -> dict:
    row = {}
    for k, v in d.items():
        if isinstance(v, (str, int, float, bool)):
            row[prefix + k] = v
        elif isinstance(v, dict) and not prefix:
            row.update(_scalar_row(v, prefix=f"{k}."))
    return row


def render_csv(report: dict) -> str:
    """Flat projection of the tabular lines of a report."""
    lines = report["results"].get("lines")
    if not lines:
        lines = [_scalar_row(report["results"])]
    keys = sorted({k for line in lines for k in line if isinstance(line[k], (str, int, float, bool))})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=keys, extrasaction="ignore")
    writer.writeheader()
    for line in lines:
        writer.writerow({k: line.get(k, "") for k in keys})
    return buf.getvalue()


def emit(report: dict, out: str | None, fmt: str) -> None:
    text = render_csv(report) if fmt == "csv" else render_json(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
