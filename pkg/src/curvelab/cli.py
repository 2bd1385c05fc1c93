"""
Command-line front end.

    curvelab <fit|sample|curvature|maxcurv|frame|svg|verify> --input PATH|NAME
             [--mode relaxed|periodic] [--samples N] [--at T] [--output PATH]
             [--show-control-polygon] [--tol-root R] [--verify-grid N] [--table]

``--input`` accepts a JSON or CSV file, or the name of a bundled dataset
(T1..T5, E1..E3, space_curve). The mode defaults to the dataset's
``mode_hint`` and then to relaxed.

Exit codes: 0 ok, 2 invalid input, 3 degenerate geometry, 4 failed
verification.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys

import numpy as np

from . import __version__
from .curvature import (
    CurvatureReport,
    _algorithm_index,
    curvature_at,
    curvature_profile,
    frenet_frame,
    max_curvature,
)
from .datasets import Dataset, resolve
from .errors import (
    CurvelabError,
    DegenerateCurve,
    DimensionMismatch,
    ZeroCurvature,
    ZeroVelocity,
)
from .geometry import ROOT_RESIDUAL_RTOL
from .oracle import Tolerances, oracle_control_polygon, system_residual, verify_curve
from .spline import ControlPolygon, Kind, SplineCurve, build_spline, solve
from .svg import render_svg

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_VERIFY = 4

JSON_DIGITS = 12
TABLE_DIGITS = 9

COMMANDS = ("fit", "sample", "curvature", "maxcurv", "frame", "svg", "verify")


def num(x: float) -> float:
    """Round to the JSON output precision (12 significant digits)."""
    return float(f"{x:.{JSON_DIGITS}g}")


def nums(a) -> list:
    return [num(x) for x in np.ravel(a)] if np.ndim(a) <= 1 else [nums(r) for r in a]


def _tab(x: float) -> str:
    return f"{x:.{TABLE_DIGITS}g}"


_NUMBER_LIST = re.compile(r"\[\s*([-+0-9.eE]+(?:,\s*[-+0-9.eE]+)*)\s*\]")


def _inline(match) -> str:
    return "[" + ", ".join(item.strip() for item in match.group(1).split(",")) + "]"


def _json(obj) -> str:
    """Indented JSON with innermost number lists kept on one line."""
    return _NUMBER_LIST.sub(_inline, json.dumps(obj, indent=2)) + "\n"


def _mode(args, ds: Dataset) -> Kind:
    if args.mode:
        return Kind(args.mode)
    return ds.mode_hint or Kind.RELAXED


def _curve(ds: Dataset, kind: Kind, corrupt=None) -> SplineCurve:
    B = solve(ds.points, kind)
    if corrupt is not None:
        B = _corrupted(B, ds, corrupt)
    return build_spline(B, ds.points)


def _corrupted(B: ControlPolygon, ds: Dataset, index: int) -> ControlPolygon:
    b = np.array(B.b)
    b[index % len(b)] += 1e-3 * ds.points.scale
    return ControlPolygon(b, B.kind)


# -- report builders (pure: dataset in, JSON-ready dict out) -------------------


def fit_report(ds: Dataset, kind: Kind) -> dict:
    B = solve(ds.points, kind)
    C = build_spline(B, ds.points)
    scale = ds.points.scale
    oracle = oracle_control_polygon(ds.points, kind)
    return {
        "name": ds.name,
        "mode": kind.value,
        "dim": ds.dim,
        "domain": [0, C.m],
        "control_points": nums(B.b),
        "segments": [
            {"index": seg.index, "interval": [seg.start, seg.index], "controls": nums(seg.controls)}
            for seg in C.segments
        ],
        "residuals": {
            "system": num(system_residual(B, ds.points) / scale),
            "closed_form_vs_thomas": num(float(np.max(np.abs(B.b - oracle.b))) / scale),
        },
    }


def maxcurv_report(ds: Dataset, kind: Kind, report: CurvatureReport, C: SplineCurve) -> dict:
    return {
        "name": ds.name,
        "mode": kind.value,
        "dim": ds.dim,
        "degenerate": report.degenerate,
        "kappa_max": num(report.kappa_max),
        "argmax": [
            {"t": num(t), "segment": C.segment_index(t) if t > 0 else 1, "point": nums(C.eval(t))}
            for t in report.argmax
        ],
        "per_interval": [
            {
                "index": iv.index,
                "m": num(iv.m),
                "locations": [num(t) for t in iv.locations],
                "degenerate": iv.degenerate,
            }
            for iv in report.per_interval
        ],
    }


def maxcurv_table(ds: Dataset, kind: Kind, report: CurvatureReport) -> str:
    out = io.StringIO()
    out.write(f"{ds.name} ({kind.value}, {ds.dim}D, {len(ds.points)} points)\n")
    out.write(f"{'i':>4}  {'m_i':>16}  locations\n")
    for iv in report.per_interval:
        locs = ", ".join(_tab(t) for t in iv.locations)
        flag = "  (straight)" if iv.degenerate else ""
        out.write(f"{iv.index:>4}  {_tab(iv.m):>16}  {locs}{flag}\n")
    if report.degenerate:
        out.write("kappa_max = 0 (degenerate: every segment is straight)\n")
    else:
        out.write(f"kappa_max = {_tab(report.kappa_max)} at t = "
                  + ", ".join(_tab(t) for t in report.argmax) + "\n")
    return out.getvalue()


def sample_csv(C: SplineCurve, count: int) -> str:
    ts = np.linspace(0.0, C.m, count)
    pts = C.eval(ts)
    kappa = curvature_profile(C, ts)
    axes = "xyz"[: C.dim]
    out = io.StringIO()
    out.write(",".join(["t", *axes, "kappa"]) + "\n")
    for t, p, k in zip(ts, pts, kappa):
        cells = [f"{t:.12g}", *(f"{c:.12g}" for c in p), "" if np.isnan(k) else f"{k:.12g}"]
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def verify_table(name: str, kind: Kind, report) -> str:
    out = io.StringIO()
    out.write(f"verify {name} ({kind.value})\n")
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        out.write(f"  {status}  {c.name:<26} {c.value:.3e} <= {c.tolerance:.1e}\n")
    out.write("all checks passed\n" if report.passed else "verification FAILED\n")
    return out.getvalue()


# -- command handlers ------------------------------------------------------------


def _emit(args, text: str, table: str | None = None):
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
        if table is not None:
            sys.stdout.write(table)
    elif args.table and table is not None:
        sys.stdout.write(table)
    else:
        sys.stdout.write(text)


def cmd_fit(args, ds):
    _emit(args, _json(fit_report(ds, _mode(args, ds))))
    return EXIT_OK


def cmd_sample(args, ds):
    if args.samples < 2:
        raise argparse.ArgumentTypeError("--samples must be at least 2")
    _emit(args, sample_csv(_curve(ds, _mode(args, ds)), args.samples))
    return EXIT_OK


def _at(args):
    if args.at is None:
        raise argparse.ArgumentTypeError("--at T is required for this command")
    return args.at


def cmd_curvature(args, ds):
    kind = _mode(args, ds)
    C = _curve(ds, kind)
    t = _at(args)
    kappa = curvature_at(C, t)
    doc = {"name": ds.name, "mode": kind.value, "t": num(t),
           "segment": _algorithm_index(C, t), "kappa": num(kappa)}
    _emit(args, _json(doc), f"kappa({_tab(t)}) = {_tab(kappa)}\n")
    return EXIT_OK


def cmd_frame(args, ds):
    kind = _mode(args, ds)
    C = _curve(ds, kind)
    if C.dim != 3:
        raise DimensionMismatch("frame needs a 3D dataset")
    t = _at(args)
    F = frenet_frame(C, t)
    doc = {"name": ds.name, "mode": kind.value, "t": num(t), "kappa": num(curvature_at(C, t)),
           "T": nums(F.T), "N": nums(F.N), "B": nums(F.B)}
    table = "".join(f"{k} = ({', '.join(_tab(c) for c in v)})\n" for k, v in
                    (("T", F.T), ("N", F.N), ("B", F.B)))
    _emit(args, _json(doc), table)
    return EXIT_OK


def cmd_maxcurv(args, ds):
    kind = _mode(args, ds)
    C = _curve(ds, kind)
    report = max_curvature(C, allow_degenerate=True, root_rtol=args.tol_root)
    _emit(args, _json(maxcurv_report(ds, kind, report, C)), maxcurv_table(ds, kind, report))
    if report.degenerate:
        sys.stderr.write("degenerate curve: every segment is straight, so curvature is "
                         "identically zero and has no isolated maximum\n")
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_svg(args, ds):
    kind = _mode(args, ds)
    C = _curve(ds, kind)
    report = max_curvature(C, allow_degenerate=True, root_rtol=args.tol_root)
    per_seg = args.samples if args.samples_given else 64
    _emit(args, render_svg(C, report, show_control=args.show_control_polygon,
                           samples_per_segment=max(2, per_seg)))
    return EXIT_OK


def cmd_verify(args, ds):
    kind = _mode(args, ds)
    control = None
    if args.corrupt_control is not None:
        control = _corrupted(solve(ds.points, kind), ds, args.corrupt_control)
    tol = Tolerances(grid_samples=args.verify_grid)
    report = verify_curve(ds.points, kind, control=control, tol=tol)
    doc = {
        "name": ds.name,
        "mode": kind.value,
        "passed": report.passed,
        "checks": [
            {"name": c.name, "value": num(c.value), "tolerance": c.tolerance, "passed": c.passed}
            for c in report.checks
        ],
    }
    _emit(args, _json(doc), verify_table(ds.name, kind, report))
    return EXIT_OK if report.passed else EXIT_VERIFY


HANDLERS = {
    "fit": cmd_fit,
    "sample": cmd_sample,
    "curvature": cmd_curvature,
    "maxcurv": cmd_maxcurv,
    "frame": cmd_frame,
    "svg": cmd_svg,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="curvelab",
        description="Interpolating uniform cubic B-splines and their maximum curvature.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", "-i", required=True, help="dataset file (.json/.csv) or bundled name")
    p.add_argument("--mode", "-m", choices=[k.value for k in Kind])
    p.add_argument("--samples", "-n", type=int, default=None,
                   help="sample count (sample) or samples per segment (svg)")
    p.add_argument("--at", type=float, help="global parameter for curvature/frame")
    p.add_argument("--output", "-o", help="write the JSON/CSV/SVG artifact here")
    p.add_argument("--show-control-polygon", action="store_true")
    p.add_argument("--tol-root", type=float, default=ROOT_RESIDUAL_RTOL,
                   help="relative residual tolerance of the root finder")
    p.add_argument("--verify-grid", type=int, default=Tolerances.grid_samples,
                   help="dense-grid samples per segment used by verify")
    p.add_argument("--table", action="store_true",
                   help="print the human-readable table instead of JSON when no --output is given")
    # test hook: perturb one control point before verifying
    p.add_argument("--corrupt-control", type=int, default=None, help=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.samples_given = args.samples is not None
    if args.samples is None:
        args.samples = 201
    if args.tol_root <= 0 or args.verify_grid < 1000:
        parser.error("--tol-root must be positive and --verify-grid at least 1000")
    try:
        ds = resolve(args.input)
        return HANDLERS[args.command](args, ds)
    except (DegenerateCurve, ZeroVelocity, ZeroCurvature) as exc:
        sys.stderr.write(f"curvelab: degenerate geometry: {exc}\n")
        return EXIT_DEGENERATE
    except (CurvelabError, argparse.ArgumentTypeError, OSError) as exc:
        sys.stderr.write(f"curvelab: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
