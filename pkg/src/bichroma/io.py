"""Point and tree files.

Instances are stored as JSON (canonical)::

    {"metadata": {...}, "points": [{"x": 0.25, "y": 0.5, "color": 0}, ...]}

or as CSV with an ``x,y,color`` header. Point ids are the row order. Floats
are written with ``repr`` so a save/load round trip is bit-exact.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import InputError, IoError
from .geometry import ColoredPoint
from .minbst import ColoredTree


@dataclass
class InstanceFile:
    points: list[ColoredPoint]
    metadata: dict = field(default_factory=dict)

    def validate(self, strict: bool = False) -> "InstanceFile":
        if not self.points:
            raise InputError("instance has no points")
        if strict:
            colors = sorted({p.color for p in self.points})
            if colors != list(range(len(colors))):
                raise InputError(f"colors {colors} are not a contiguous range from 0")
        return self


def _fmt(v: float) -> str:
    return repr(float(v))


def _parse_float(raw, where: str) -> float:
    if isinstance(raw, bool):
        raise InputError(f"{where}: expected a number, got {raw!r}")
    try:
        v = float(raw)
    except (TypeError, ValueError):
        raise InputError(f"{where}: expected a number, got {raw!r}") from None
    if not math.isfinite(v):
        raise InputError(f"{where}: coordinate is not finite")
    return v


def _parse_color(raw, where: str) -> int:
    if isinstance(raw, bool):
        raise InputError(f"{where}: expected an integer color, got {raw!r}")
    try:
        c = int(raw)
    except (TypeError, ValueError):
        raise InputError(f"{where}: expected an integer color, got {raw!r}") from None
    if (isinstance(raw, float) and c != raw) or c < 0:
        raise InputError(f"{where}: bad color {raw!r}")
    return c


# -- instances --------------------------------------------------------------

def instance_to_json(inst: InstanceFile) -> str:
    # hand-formatted so that floats keep their repr and files diff line by line
    lines = ["{"]
    lines.append(f'  "metadata": {json.dumps(inst.metadata, sort_keys=True)},')
    lines.append('  "points": [')
    rows = [f'    {{"x": {_fmt(p.x)}, "y": {_fmt(p.y)}, "color": {int(p.color)}}}'
            for p in inst.points]
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def instance_to_csv(inst: InstanceFile) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "color"])
    for p in inst.points:
        w.writerow([_fmt(p.x), _fmt(p.y), int(p.color)])
    return buf.getvalue()


def parse_instance_json(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
    if isinstance(doc, list):
        doc = {"points": doc}
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise InputError('expected an object with a "points" list')
    pts = []
    for i, row in enumerate(doc["points"]):
        where = f"point {i}"
        if isinstance(row, dict):
            missing = {"x", "y", "color"} - row.keys()
            if missing:
                raise InputError(f"{where}: missing {sorted(missing)}")
            x, y, c = row["x"], row["y"], row["color"]
        elif isinstance(row, list) and len(row) == 3:
            x, y, c = row
        else:
            raise InputError(f"{where}: expected {{x, y, color}}")
        pts.append(ColoredPoint(_parse_float(x, where), _parse_float(y, where),
                                _parse_color(c, where), i))
    meta = doc.get("metadata") or {}
    if not isinstance(meta, dict):
        raise InputError("metadata must be an object")
    return InstanceFile(pts, meta).validate()


def parse_instance_csv(text: str) -> InstanceFile:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows or [c.strip() for c in rows[0]] != ["x", "y", "color"]:
        raise InputError("line 1: CSV header must be x,y,color")
    pts = []
    for k, row in enumerate(rows[1:]):
        where = f"line {k + 2}"
        if len(row) != 3:
            raise InputError(f"{where}: expected 3 fields, got {len(row)}")
        pts.append(ColoredPoint(_parse_float(row[0], where), _parse_float(row[1], where),
                                _parse_color(row[2].strip(), where), k))
    return InstanceFile(pts).validate()


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write_text(path, text: str):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from None


def _is_csv(path) -> bool:
    return str(path).lower().endswith(".csv")


def load_instance(path) -> InstanceFile:
    text = _read_text(path)
    return parse_instance_csv(text) if _is_csv(path) else parse_instance_json(text)


def save_instance(inst: InstanceFile, path):
    _write_text(path, instance_to_csv(inst) if _is_csv(path) else instance_to_json(inst))


def load_points(path) -> list[ColoredPoint]:
    return load_instance(path).points


def save_points(points: Sequence[ColoredPoint], path, metadata: Optional[dict] = None):
    save_instance(InstanceFile(list(points), dict(metadata or {})), path)


# -- trees ------------------------------------------------------------------

def tree_to_json(tree: ColoredTree, extra: Optional[dict] = None) -> str:
    doc = {
        "n": tree.n,
        "total_length": tree.total_length,
        "edges": [list(e) for e in tree.edges],
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save_tree(tree: ColoredTree, path, extra: Optional[dict] = None):
    _write_text(path, tree_to_json(tree, extra))


def load_tree(path, points: Sequence[ColoredPoint]) -> ColoredTree:
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} line {exc.lineno}: invalid JSON ({exc.msg})") from None
    edges = doc.get("edges") if isinstance(doc, dict) else None
    if not isinstance(edges, list):
        raise InputError(f'{path}: expected an object with an "edges" list')
    ids = {p.id for p in points}
    out = []
    for k, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise InputError(f"{path}: edge {k} is not a pair of integer ids")
        if e[0] not in ids or e[1] not in ids or e[0] == e[1]:
            raise InputError(f"{path}: edge {k} {e} does not join two distinct points")
        out.append((e[0], e[1]))
    return ColoredTree(list(points), out)


def write_json(path, doc):
    _write_text(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
