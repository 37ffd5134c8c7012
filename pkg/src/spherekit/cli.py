"""Command-line interface.

Usage::

    python -m spherekit [global options] COMMAND [options]

Global options may also follow the command. Output is a human-readable
table by default, or one JSON record per line with ``--format records``.
Exit status is 0 on success, 2 on a usage or input error and 3 when a
numerical method fails.
"""

from __future__ import annotations

import argparse
import configparser
import math
import re
import sys
from dataclasses import asdict, replace
from pathlib import Path

import numpy as np

from . import __version__
from . import bounds as B
from . import contacts as C
from . import isoperimetric as I
from . import optimize as O
from .geom import GeometryError, platonic_vertices, solid_tangency_points
from .io import (RunManifest, Stopwatch, clean, export, graph_document, load_kissing_table,
                 load_points, polyhedron_document, record_line, save_points)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3
SOLIDS = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")
BOUND_KINDS = ("ft-packing", "ft-covering", "ft-code", "coxeter", "goldberg",
               "conjecture-vertex", "conjecture-edge", "kappa", "kbar")
OPTIMIZE_MODES = ("tammes", "antipodal", "hemisphere", "max-contacts")


class UsageError(Exception):
    """Bad command-line input; exits with status 2."""


_ANGLE = re.compile(r"^\s*([-+]?\d*\.?\d*(?:e[-+]?\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$", re.I)


def parse_angle(text: str) -> float:
    """Parse ``pi/3``, ``2pi/3``, ``60deg`` or plain radians."""
    s = str(text).strip()
    try:
        if s.lower().endswith("deg"):
            return math.radians(float(s[:-3]))
        m = _ANGLE.match(s)
        if m:
            coef = m.group(1)
            coef = 1.0 if coef in ("", "+") else (-1.0 if coef == "-" else float(coef))
            return coef * math.pi / (float(m.group(2)) if m.group(2) else 1.0)
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


# -- output -----------------------------------------------------------------------

class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, record: dict) -> None:
        if self.fmt == "records":
            print(record_line(record), file=self.stream)
            return
        rec = clean(record)
        width = max(len(k) for k in rec)
        for k, v in rec.items():
            if isinstance(v, list) and len(v) > 8:
                v = f"[{len(v)} items]"
            print(f"{k:<{width}}  {v}", file=self.stream)
        print(file=self.stream)


# -- configuration -------------------------------------------------------------------

_CONFIG_TYPES = {
    "restarts": int,
    "iterations_per_restart": int,
    "master_seed": int,
    "convergence_tol": float,
    "polish": int,
    "softmin_beta_schedule": lambda s: tuple(float(v) for v in s.replace(",", " ").split()),
    "step_schedule": lambda s: tuple(float(v) for v in s.replace(",", " ").split()),
}


def load_config(path) -> dict:
    """Key-value optimizer overrides, one ``key = value`` per line."""
    parser = configparser.ConfigParser()
    try:
        text = Path(path).read_text(encoding="utf-8")
        parser.read_string("[optimizer]\n" + text)
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    out = {}
    for key, value in parser["optimizer"].items():
        if key not in _CONFIG_TYPES:
            raise UsageError(f"unknown config key {key!r}")
        try:
            out[key] = _CONFIG_TYPES[key](value)
        except ValueError:
            raise UsageError(f"bad value for {key}: {value!r}") from None
    return out


def optimizer_config(args) -> O.OptimizerConfig:
    over = load_config(args.config) if args.config else {}
    if args.restarts is not None:
        over["restarts"] = args.restarts
    if args.iterations is not None:
        over["iterations_per_restart"] = args.iterations
    over["master_seed"] = args.seed
    over["threads"] = args.threads
    try:
        return replace(O.OptimizerConfig(), **over)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _require_seed(args) -> None:
    if args.strict and not args.seed_given:
        raise UsageError(f"--strict: '{args.command}' is randomized and needs an explicit --seed")


# -- commands -------------------------------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        what = args.kind if args.command == "bounds" else args.mode
        raise UsageError(f"{args.command} {what} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))


def cmd_bounds(args, out: Output) -> None:
    kind = args.kind
    rec = {"command": "bounds", "kind": kind}
    if kind in ("ft-packing", "ft-covering"):
        _need(args, "n")
        fn = B.ft_packing_bound if kind == "ft-packing" else B.ft_covering_bound
        rep = B.BoundReport(kind.replace("-", "_"), (("N", args.n),), fn(args.n))
    elif kind == "ft-code":
        _need(args, "phi")
        rep = B.BoundReport("ft_code", (("phi", args.phi),), B.ft_code_bound(args.phi))
    elif kind == "coxeter":
        _need(args, "n", "phi")
        rep = B.coxeter_bound(args.n, args.phi)
    elif kind == "goldberg":
        _need(args, "f")
        rep = B.BoundReport("goldberg_ft", (("f", args.f),), B.goldberg_ft_rhs(args.f))
    elif kind == "conjecture-vertex":
        _need(args, "v")
        cv = B.ft_vertex_conjecture_rhs(args.v)
        rec.update(params={"v": args.v}, value=cv.rhs, iq_ceiling=cv.iq_ceiling, method="closed_form")
        out.emit(rec)
        return
    elif kind == "conjecture-edge":
        _need(args, "f", "v", "e")
        cv = B.ft_edge_conjecture_rhs(args.f, args.v, args.e)
        rec.update(params={"f": args.f, "v": args.v, "e": args.e}, value=cv.rhs,
                   iq_ceiling=cv.iq_ceiling, method="closed_form")
        out.emit(rec)
        return
    elif kind == "kappa":
        _need(args, "d")
        rec.update(params={"d": args.d}, value=B.kappa(args.d), method="closed_form")
        out.emit(rec)
        return
    else:  # kbar
        _need(args, "n")
        table = load_kissing_table(args.table) if args.table else B.KissingTable.default()
        try:
            value = B.kbar(table, args.n)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        rec.update(params={"n": args.n}, value=value, method="table")
        out.emit(rec)
        return
    rec.update(params=dict(rep.params), value=rep.value, method=rep.method,
               error_estimate=rep.error_estimate)
    if kind in ("ft-code", "coxeter"):
        rec["integer"] = rep.integer
    out.emit(rec)


def cmd_optimize(args, out: Output) -> None:
    _require_seed(args)
    cfg = optimizer_config(args)
    mode = args.mode
    feasible = None
    with Stopwatch() as sw:
        if mode == "tammes":
            _need(args, "n")
            res = O.tammes_solve(args.n, cfg)
        elif mode == "antipodal":
            _need(args, "m")
            res = O.antipodal_solve(args.m, cfg)
        elif mode == "hemisphere":
            _need(args, "n")
            target = args.target if args.target is not None else math.pi / 3.0
            res, feasible = O.hemisphere_code_search(args.n, target, cfg)
        else:
            _need(args, "n")
            res = O.max_contacts(args.n, args.d, cfg)
    G = C.build_contact_graph(res.code, args.tol,
                              contact_distance=res.contact_distance if mode == "max-contacts" else None)
    rec = {
        "command": "optimize", "mode": mode, "n": res.code.n,
        "psi": res.psi, "psi_deg": math.degrees(res.psi),
        "best_restart": res.best_restart, "certificate": res.certificate,
        "contacts": C.edge_count(G), "seed": cfg.master_seed,
    }
    if feasible is not None:
        rec["feasible"] = feasible
    outputs = []
    if args.out:
        outdir = Path(args.out)
        try:
            outdir.mkdir(parents=True, exist_ok=True)
            stem = f"{mode}_{res.code.n}"
            save_points(outdir / f"{stem}.points.json", res.code.points)
            export(outdir / f"{stem}.graph.json", graph_document(G))
            outputs = [str(outdir / f"{stem}.points.json"), str(outdir / f"{stem}.graph.json")]
            cfg_echo = {k: v for k, v in asdict(cfg).items() if k != "threads"}
            cfg_echo.update(mode=mode, n=args.n, m=args.m, target=args.target, d=args.d)
            RunManifest(f"optimize {mode}", cfg_echo, cfg.master_seed, outputs,
                        sw.elapsed, __version__).write(outdir / f"{stem}.manifest.json")
        except OSError as exc:
            raise UsageError(f"cannot write to {outdir}: {exc}") from None
    out.emit(rec)


def _points_arg(args):
    if args.solid:
        return solid_tangency_points(args.solid)
    if not args.file:
        raise UsageError("give a point file or --solid NAME")
    try:
        return load_points(args.file)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot load {args.file}: {exc}") from None


def cmd_contacts(args, out: Output) -> None:
    x = platonic_vertices(args.solid) if args.solid else _points_arg(args)
    G = C.build_contact_graph(x, args.tol, contact_distance=args.d)
    rec = {
        "command": "contacts", "n": G.n, "edges": C.edge_count(G),
        "faces": None if G.faces is None else len(G.faces),
        "face_sizes": None if G.faces is None else sorted(len(f) for f in G.faces),
        "contact_distance": G.contact_distance, "min_edge": G.min_edge, "max_edge": G.max_edge,
        "maximal_packing": C.is_maximal_packing(G),
        "irreducible_by_faces": "not applicable" if G.faces is None else C.irreducible_by_faces(G),
        "irreducible_by_count": C.irreducible_by_count(G),
    }
    if args.export:
        export(args.export, graph_document(G))
    out.emit(rec)


def cmd_iq(args, out: Output) -> None:
    P = I.circumscribe(_points_arg(args))
    q = I.iq(P)
    rec = {
        "command": "iq", "source": args.solid or str(args.file), "dimension": P.dimension,
        "faces": P.n_faces, "vertices": P.n_vertices,
        "surface_area": P.surface_area, "volume": P.volume, "iq": q,
        "volume_residual": abs(P.volume_check - P.surface_area / P.dimension) / P.volume,
    }
    if P.dimension == 3:
        rep = I.projection_report(P, args.tol if args.tol_given else 1e-13)
        g = B.goldberg_ft_rhs(P.n_faces)
        rec.update(
            edges=P.n_edges,
            goldberg_rhs=g, goldberg_margin=g - q,
            lifted_bound=I.lifted_triangle_bound(P.n_faces), lifted_bound_margin=I.lifted_triangle_bound(P.n_faces) - q,
            projected_vertex_match=rep.projected_vertex_match,
            voronoi_area_sum_error=rep.face_area_sum_check,
            delaunay_area_sum_error=rep.delaunay_area_sum_check,
            preimage_area_sum=rep.preimage_area_sum,
            preimage_area_sum_error=abs(rep.preimage_area_sum - P.surface_area),
            centroid_defect=I.centroid_defect(P),
        )
    if args.export:
        export(args.export, polyhedron_document(P, q))
    out.emit(rec)


def cmd_project(args, out: Output) -> None:
    P = I.circumscribe(_points_arg(args))
    if P.dimension != 3:
        raise UsageError("projection identities are implemented for d = 3")
    rep = I.projection_report(P, args.tol if args.tol_given else 1e-13)
    out.emit({
        "command": "project", "source": args.solid or str(args.file), "faces": P.n_faces,
        "voronoi_area_sum_error": rep.face_area_sum_check,
        "delaunay_area_sum_error": rep.delaunay_area_sum_check,
        "projected_vertex_match": rep.projected_vertex_match,
        "equidistance_spread": rep.equidistance_spread,
        "preimage_area_sum": rep.preimage_area_sum, "surface_area": P.surface_area,
        "face_preimage_mismatch": rep.face_preimage_mismatch,
    })


def cmd_rho(args, out: Output) -> None:
    rec = {"command": "rho", "d": args.d, "t": args.t}
    if args.d == 3:
        rec["exact"] = I.rho(args.t)
    if args.samples:
        _require_seed(args)
        r = I.rho_d(args.d, args.t, samples=args.samples, seed=args.seed)
        rec.update(monte_carlo=r.value, stderr=r.stderr, inner_product=r.inner_product,
                   hits=r.hits, samples=args.samples, seed=args.seed)
    elif args.d != 3:
        raise UsageError("d > 3 needs --samples for the Monte Carlo estimate")
    out.emit(rec)


def cmd_conjectures(args, out: Output) -> None:
    P = I.circumscribe(_points_arg(args))
    if P.dimension > 3:
        _require_seed(args)
    for r in I.conjecture_report(P, samples=args.samples, seed=args.seed):
        out.emit({"command": "conjectures", "source": args.solid or str(args.file), **r._asdict()})


def cmd_table(args, out: Output) -> None:
    table = load_kissing_table(args.table) if args.table else B.KissingTable.default()
    for n, (k, prov) in sorted(table.entries.items()):
        rec = {"command": "table", "n": n, "k": k, "provenance": prov}
        if n - 1 in table:
            rec["kbar"] = B.kbar(table, n)
        out.emit(rec)


COMMANDS = {
    "bounds": cmd_bounds, "optimize": cmd_optimize, "contacts": cmd_contacts, "iq": cmd_iq,
    "rho": cmd_rho, "project": cmd_project, "conjectures": cmd_conjectures, "table": cmd_table,
}


# -- parser ------------------------------------------------------------------------------

def _global_options(p, defaults: bool) -> None:
    sup = None if defaults else argparse.SUPPRESS
    p.add_argument("--format", choices=("table", "records"), default="table" if defaults else sup)
    p.add_argument("--seed", type=int, default=sup)
    p.add_argument("--threads", type=int, default=1 if defaults else sup)
    p.add_argument("--tol", type=float, default=sup)
    p.add_argument("--strict", action="store_true", default=False if defaults else sup)
    p.add_argument("--config", default=sup, help="key = value file overriding optimizer defaults")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    _global_options(common, defaults=False)
    p = argparse.ArgumentParser(prog="spherekit", allow_abbrev=False, description="Spherical codes, kissing bounds and circumscribed polyhedra.")
    p.add_argument("--version", action="version", version=__version__)
    _global_options(p, defaults=True)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", parents=[common], help="packing, covering and kissing bounds", allow_abbrev=False)
    b.add_argument("kind", choices=BOUND_KINDS)
    b.add_argument("--n", type=int)
    b.add_argument("--phi", type=parse_angle)
    b.add_argument("--d", type=parse_angle)
    b.add_argument("--f", type=int)
    b.add_argument("--v", type=int)
    b.add_argument("--e", type=int)
    b.add_argument("--table", help="kissing-table file (JSON lines)")

    o = sub.add_parser("optimize", parents=[common], help="seeded point-set searches on S^2", allow_abbrev=False)
    o.add_argument("mode", choices=OPTIMIZE_MODES)
    o.add_argument("--n", type=int)
    o.add_argument("--m", type=int)
    o.add_argument("--target", type=parse_angle)
    o.add_argument("--d", type=parse_angle)
    o.add_argument("--restarts", type=int)
    o.add_argument("--iterations", type=int)
    o.add_argument("--out", help="directory for points, graph and manifest files")

    for name, helptext in (("contacts", "contact graph of a point set"),
                           ("iq", "circumscribed polyhedron report"),
                           ("project", "central projection identities"),
                           ("conjectures", "conjectured IQ bounds")):
        q = sub.add_parser(name, parents=[common], help=helptext, allow_abbrev=False)
        q.add_argument("file", nargs="?")
        q.add_argument("--solid", choices=SOLIDS)
        if name == "contacts":
            q.add_argument("--d", type=parse_angle, help="contact distance (default: minimum distance)")
        if name in ("contacts", "iq"):
            q.add_argument("--export", help="write the graph or polyhedron document here")
        if name == "conjectures":
            q.add_argument("--samples", type=int, default=I.MC_SAMPLES)

    r = sub.add_parser("rho", parents=[common], help="lifted area of a regular spherical simplex", allow_abbrev=False)
    r.add_argument("--t", type=float, required=True)
    r.add_argument("--d", type=int, default=3)
    r.add_argument("--samples", type=int, help="Monte Carlo samples (required for d > 3)")

    t = sub.add_parser("table", parents=[common], help="kissing numbers and their averages", allow_abbrev=False)
    t.add_argument("--table", help="kissing-table file (JSON lines)")
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = 0
    args.tol_given = args.tol is not None
    if args.tol is None:
        args.tol = C.CONTACT_TOL
    out = Output(args.format, stdout)
    try:
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"spherekit: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (ArithmeticError, GeometryError, C.ContactError, np.linalg.LinAlgError) as exc:
        print(f"spherekit: numeric failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError, OSError) as exc:
        print(f"spherekit: error: {exc}", file=stderr)
        return EXIT_USAGE
    return EXIT_OK


__all__ = ["main", "build_parser", "parse_angle", "load_config", "EXIT_OK", "EXIT_USAGE", "EXIT_NUMERIC"]


def main_exit() -> None:
    sys.exit(main())
