"""
Datasets: file formats and the bundled example point sets.

JSON schema::

    {"name": str, "dim": 2 | 3, "mode_hint": "relaxed" | "periodic" | null,
     "points": [[x, y(, z)], ...],
     "generator": {"curve": str, "expression": str, "params": [t, ...]}}   # optional

``generator`` records how sampled datasets were produced: ``points`` are the
named parametric curve evaluated at ``params``. CSV input is headerless rows
of 2 or 3 floats.

Running ``python -m curvelab.datasets [DIR]`` rewrites the bundled JSON files
from the definitions below.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CurvelabError
from .spline import Kind, PointSet

__all__ = [
    "Dataset",
    "DatasetError",
    "GENERATORS",
    "generate",
    "load",
    "loads",
    "dumps",
    "save",
    "reference_datasets",
    "builtin_names",
    "builtin",
    "resolve",
    "DATA_DIR",
]

DATA_DIR = Path(__file__).parent / "datasets"


class DatasetError(CurvelabError, ValueError):
    pass


def _t2_curve(t):
    return (3.0 * math.sin(t), t * math.cos(3.0 * t))


def _ellipse(t):
    return (3.0 * math.cos(t), 2.0 * math.sin(t))


def _trefoil(t):
    r = 1.0 + 0.3 * math.cos(3.0 * t)
    return (r * math.cos(2.0 * t), r * math.sin(2.0 * t), 0.35 * math.sin(3.0 * t))


# name -> (callable, human-readable expression)
GENERATORS = {
    "sine_wave": (_t2_curve, "(3 sin t, t cos 3t)"),
    "ellipse": (_ellipse, "(3 cos t, 2 sin t)"),
    "trefoil": (_trefoil, "((1 + 0.3 cos 3t) cos 2t, (1 + 0.3 cos 3t) sin 2t, 0.35 sin 3t)"),
}


def generate(curve: str, params) -> np.ndarray:
    try:
        fn, _ = GENERATORS[curve]
    except KeyError:
        raise DatasetError(f"unknown generator curve {curve!r}") from None
    return np.array([fn(float(t)) for t in params], dtype=float)


@dataclass(frozen=True)
class Dataset:
    name: str
    points: PointSet
    mode_hint: Kind | None = None
    generator: dict | None = None

    @property
    def dim(self) -> int:
        return self.points.dim

    @classmethod
    def from_generator(cls, name, curve, params, mode_hint=None):
        params = [float(t) for t in params]
        gen = {"curve": curve, "expression": GENERATORS[curve][1], "params": params}
        return cls(name, PointSet(generate(curve, params)), _kind(mode_hint), gen)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "dim": self.dim,
            "mode_hint": self.mode_hint.value if self.mode_hint else None,
            "points": self.points.points.tolist(),
        }
        if self.generator is not None:
            out["generator"] = dict(self.generator)
        return out


def _kind(value):
    if value is None or isinstance(value, Kind):
        return value
    try:
        return Kind(value)
    except ValueError:
        raise DatasetError(f"mode_hint must be 'relaxed', 'periodic' or null, got {value!r}") from None


def _from_dict(obj: dict, default_name: str = "dataset") -> Dataset:
    if not isinstance(obj, dict):
        raise DatasetError("dataset JSON must be an object")
    if "points" not in obj:
        raise DatasetError("dataset JSON needs a 'points' array")
    pts = obj["points"]
    if not isinstance(pts, list) or not all(isinstance(p, list) for p in pts):
        raise DatasetError("'points' must be a list of coordinate lists")
    for i, p in enumerate(pts):
        if len(p) not in (2, 3) or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in p):
            raise DatasetError(f"point {i} must be 2 or 3 numbers, got {p!r}")
    widths = {len(p) for p in pts}
    if len(widths) > 1:
        bad = next(i for i, p in enumerate(pts) if len(p) != len(pts[0]))
        raise DatasetError(f"point {bad} has {len(pts[bad])} coordinates, expected {len(pts[0])}")
    S = PointSet(np.array(pts, dtype=float))
    dim = obj.get("dim", S.dim)
    if dim != S.dim:
        raise DatasetError(f"'dim' is {dim} but points have {S.dim} coordinates")
    gen = obj.get("generator")
    if gen is not None:
        if not isinstance(gen, dict) or "curve" not in gen or "params" not in gen:
            raise DatasetError("'generator' needs 'curve' and 'params'")
    return Dataset(str(obj.get("name", default_name)), S, _kind(obj.get("mode_hint")), gen)


def _fmt_point(p) -> str:
    return "[" + ", ".join(repr(float(c)) for c in p) + "]"


def dumps(ds: Dataset) -> str:
    """Canonical JSON text: fixed key order, one point per line, lossless floats."""
    d = ds.to_dict()
    lines = [
        "{",
        f'  "name": {json.dumps(d["name"])},',
        f'  "dim": {d["dim"]},',
        f'  "mode_hint": {json.dumps(d["mode_hint"])},',
        '  "points": [',
        ",\n".join("    " + _fmt_point(p) for p in d["points"]),
        "  ]" + ("," if "generator" in d else ""),
    ]
    if "generator" in d:
        g = d["generator"]
        params = ", ".join(repr(float(t)) for t in g["params"])
        lines += [
            '  "generator": {',
            f'    "curve": {json.dumps(g["curve"])},',
            f'    "expression": {json.dumps(g.get("expression", ""))},',
            f'    "params": [{params}]',
            "  }",
        ]
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str, default_name: str = "dataset") -> Dataset:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"invalid JSON: {exc}") from None
    return _from_dict(obj, default_name)


def _load_csv(path: Path) -> Dataset:
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            row = [c.strip() for c in row if c.strip()]
            if not row:
                continue
            try:
                rows.append([float(c) for c in row])
            except ValueError:
                raise DatasetError(f"{path}:{lineno}: non-numeric value in {row!r}") from None
    return _from_dict({"name": path.stem, "points": rows}, path.stem)


def load(path) -> Dataset:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _load_csv(path)
    return loads(path.read_text(), path.stem)


def save(ds: Dataset, path):
    Path(path).write_text(dumps(ds))


def reference_datasets() -> dict:
    """The example sets, keyed by name, built from literals and generators."""
    pi = math.pi
    sets = [
        Dataset("T1", PointSet([(-1, 3), (-0.2, 1.7), (1, 2.75), (2.75, 2.5), (1.75, 1.25),
                                (2, 2.5), (3, 1.25), (4, 0.75)]), Kind.RELAXED),
        Dataset.from_generator("T2", "sine_wave",
                               [-1, -0.6, -0.2, 0.2, 0.6, 0.9, 1.3, 1.7, 2], "relaxed"),
        Dataset("T3", PointSet([(2, 1.5), (0.75, 3), (2.5, 4), (3.5, 3), (5, 1.5), (5.5, 3.5),
                                (4, 4)]), Kind.PERIODIC),
        Dataset("T4", PointSet([(1, 4), (0.6, 2), (2, 0.4), (3.4, 1), (2.6, 2.8), (2.2, 2.4),
                                (4, 1.6), (4.6, 3), (3, 4.4)]), Kind.PERIODIC),
        Dataset.from_generator(
            "T5", "ellipse",
            [k * pi / 8 for k in (0, 1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 13, 14, 15)], "periodic"),
        Dataset("E1", PointSet([(1, 2, 2), (-0.5, 1.5, 2.5), (1, 3.5, 0.5), (0.5, 5, -1),
                                (-0.3, 5.25, 0.75), (-0.75, 3.5, 3), (0.75, 2.25, 1)]), Kind.RELAXED),
        Dataset("E2", PointSet([(-0.5, -0.5, 3), (-1.5, 1, 4.5), (-3, 2.5, 3), (-1.2, 2, 2),
                                (-2.5, 2.5, 3.5), (0.5, 5, 1), (0, 2.5, -2)]), Kind.PERIODIC),
        Dataset.from_generator(
            "E3", "trefoil", [0, 0.4, 1.0, 1.5, 2.0, 2.5, 3.2, 3.9, 4.5, 5.1, 5.8], "periodic"),
        Dataset("space_curve", PointSet([(1, -1, 3), (-2, 0.5, 4), (0, 2, 2), (1.5, 1, 1.5),
                                         (-1, 1, 3), (-1.5, 3, 4.2), (-1.7, 2, 5), (2, 4, 3.5),
                                         (1, 5.5, 3), (-0.5, 5, 3.5)]), Kind.RELAXED),
    ]
    return {ds.name: ds for ds in sets}


def builtin_names() -> list:
    return sorted(p.stem for p in DATA_DIR.glob("*.json"))


def builtin(name: str) -> Dataset:
    path = DATA_DIR / f"{name}.json"
    if not path.is_file():
        raise DatasetError(f"no bundled dataset named {name!r}")
    return load(path)


def resolve(source: str) -> Dataset:
    """Load ``source`` as a file path, falling back to a bundled dataset name."""
    path = Path(source)
    if path.is_file():
        return load(path)
    if (DATA_DIR / f"{source}.json").is_file():
        return builtin(source)
    raise DatasetError(f"input {source!r} is neither a file nor a bundled dataset")


def _write_all(directory: Path):
    directory.mkdir(parents=True, exist_ok=True)
    for name, ds in reference_datasets().items():
        save(ds, directory / f"{name}.json")


if __name__ == "__main__":
    import sys

    _write_all(Path(sys.argv[1]) if len(sys.argv) > 1 else DATA_DIR)
