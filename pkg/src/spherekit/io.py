"""Reading and writing point sets, tables, exports and run manifests.

Every document is JSON. Point sets are ``{"dimension": d, "points": [...]}``;
kissing tables are JSON lines ``{"n", "k", "provenance"}``. Floats in
records are rounded to 12 significant digits so that output is stable
across platforms.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .bounds import KissingTable
from .geom import GeometryError, as_points

SIG_DIGITS = 12


def clean(value):
    """Recursively convert numpy scalars/arrays and round floats for output.

    Non-finite floats become the strings ``"inf"``, ``"-inf"`` and ``"nan"``.
    """
    if isinstance(value, dict):
        return {str(k): clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return clean(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
        r = float(f"{x:.{SIG_DIGITS}g}")
        return 0.0 if r == 0.0 else r
    return value


def record_line(record: dict) -> str:
    """One machine-readable record: compact JSON with sorted keys."""
    return json.dumps(clean(record), sort_keys=True, separators=(",", ":"))


# -- point sets -----------------------------------------------------------------

def load_points(path) -> np.ndarray:
    """Read a point-set file; rows are normalized, zero rows rejected."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        pts = doc["points"]
    except (TypeError, KeyError):
        raise ValueError(f"{path}: expected an object with a 'points' array") from None
    x = as_points(pts)
    dim = doc.get("dimension", x.shape[1])
    if dim != x.shape[1]:
        raise ValueError(f"{path}: dimension {dim} does not match points of length {x.shape[1]}")
    return x


def save_points(path, points) -> None:
    x = np.asarray(points, dtype=float)
    _write_json(path, {"dimension": int(x.shape[1]), "points": x.tolist()})


def _write_json(path, doc) -> None:
    path = Path(path)
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n", encoding="utf-8")


# -- kissing tables ---------------------------------------------------------------

def load_kissing_table(path, base: KissingTable | None = None) -> KissingTable:
    """Read JSON-lines records ``{"n", "k", "provenance"}`` on top of ``base``.

    ``base`` defaults to the built-in exact values; file entries override.
    """
    table = KissingTable(dict((base or KissingTable.default()).entries))
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rec = json.loads(line)
                table.add(int(rec["n"]), int(rec["k"]), rec.get("provenance", "bound"))
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: bad kissing record ({exc})") from None
    return table


def save_kissing_table(path, table: KissingTable) -> None:
    lines = [record_line({"n": n, "k": k, "provenance": p})
             for n, (k, p) in sorted(table.entries.items())]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# -- exports -------------------------------------------------------------------------

def graph_document(G) -> dict:
    """Contact graph as a plain document."""
    return {
        "points": G.vertices.points.tolist(),
        "edges": [list(e) for e in G.edges],
        "faces": None if G.faces is None else [list(f) for f in G.faces],
        "contact_distance": G.contact_distance,
        "tolerance": G.tolerance,
        "min_edge": G.min_edge,
        "max_edge": G.max_edge,
    }


def polyhedron_document(P, iq_value: float | None = None) -> dict:
    """Circumscribed polyhedron as a plain document."""
    return {
        "tangency": P.tangency.points.tolist(),
        "vertices": P.vertices.tolist(),
        "faces": None if P.faces is None else [list(f) for f in P.faces],
        "surface_area": P.surface_area,
        "volume": P.volume,
        "iq": iq_value,
    }


def export(path, doc: dict) -> None:
    _write_json(path, clean(doc))


# -- manifests -------------------------------------------------------------------------

@dataclass
class RunManifest:
    """What was run, with which parameters, and what it wrote."""

    command: str
    config_echo: dict
    master_seed: int
    outputs: list = field(default_factory=list)
    wall_time: float = 0.0
    tool_version: str = ""

    def write(self, path) -> None:
        export(path, asdict(self))


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False


__all__ = [
    "GeometryError",
    "SIG_DIGITS",
    "clean",
    "record_line",
    "load_points",
    "save_points",
    "load_kissing_table",
    "save_kissing_table",
    "graph_document",
    "polyhedron_document",
    "export",
    "RunManifest",
    "Stopwatch",
]
