"""Instance generators: seeded uniform samples and crossing-extremal gadgets."""
from __future__ import annotations

import math

import numpy as np

from .errors import BadSize, InputError, NotGeneralPosition
from .geometry import ColoredPoint, require_general_position
from .io import InstanceFile

RED, BLUE = 0, 1

# Gadget layout. Two small clusters sit at (-1, 1) (blue) and (1, 1) (red);
# a red point at (GADGET_DELTA, 0) and a blue point at (-GADGET_DELTA, 0).
# Every cluster point's nearest opposite-colored point is the bottom point on
# the far side, so each cluster fans out to it and the two fans cross
# pairwise. DELTA must stay below sqrt(3) - 1 so that the fan edges are
# shorter than any cluster-to-cluster edge.
GADGET_DELTA = 0.3
GADGET_RADIUS = 0.02
# rotates the cluster circles off any symmetric (and collinear) placement
GADGET_PHASE = 0.2718281828459045
# radial and angular jitter step; retried with a larger multiple on a
# collinear triple
GADGET_JITTER = 0.6180339887498949
MAX_RESAMPLES = 1000


def gen_uniform(n: int, seed: int, colors: int = 2) -> InstanceFile:
    """``n`` uniform points in the unit square, colors dealt round-robin and
    shuffled. Samples in degenerate position are redrawn with the next
    sub-seed."""
    if n < 2:
        raise BadSize(f"n must be at least 2, got {n}")
    if colors < 2:
        raise InputError(f"need at least 2 colors, got {colors}")
    for sub in range(MAX_RESAMPLES):
        rng = np.random.default_rng([seed, sub])
        xy = rng.random((n, 2))
        labels = rng.permutation(np.arange(n) % colors)
        pts = [ColoredPoint(float(x), float(y), int(c), i)
               for i, ((x, y), c) in enumerate(zip(xy, labels))]
        try:
            require_general_position(pts)
        except NotGeneralPosition:
            continue
        meta = {"generator": "uniform", "seed": seed, "colors": colors, "n": n}
        if sub:
            meta["subseed"] = sub
        return InstanceFile(pts, meta)
    raise NotGeneralPosition(f"no sample in general position after {MAX_RESAMPLES} tries")


def _cluster(cx: float, cy: float, m: int, phase: float, attempt: int):
    out = []
    for k in range(m):
        frac = ((k + 1) * (attempt + 1) * GADGET_JITTER) % 1.0
        t = phase + 2.0 * math.pi * (k + 0.5 * frac) / m
        r = GADGET_RADIUS * (0.5 + 0.5 * frac)
        out.append((cx + r * math.cos(t), cy + r * math.sin(t)))
    return out


def _gadget(n_blue: int, n_red: int, name: str, n: int) -> InstanceFile:
    for attempt in range(MAX_RESAMPLES):
        coords = ([(x, y, BLUE) for x, y in _cluster(-1.0, 1.0, n_blue, GADGET_PHASE, attempt)]
                  + [(x, y, RED) for x, y in _cluster(1.0, 1.0, n_red, 2 * GADGET_PHASE, attempt)]
                  + [(GADGET_DELTA, 0.0, RED), (-GADGET_DELTA, 0.0, BLUE)])
        pts = [ColoredPoint(x, y, c, i) for i, (x, y, c) in enumerate(coords)]
        try:
            require_general_position(pts)
        except NotGeneralPosition:
            continue
        return InstanceFile(pts, {"generator": name, "n": n})
    raise NotGeneralPosition(f"no {name} gadget in general position for n={n}")


def gen_max_crossing_gadget(n: int) -> InstanceFile:
    """Instance whose minimum tree has ``floor(n^2/4) - n + 1`` crossings."""
    if n < 4:
        raise BadSize(f"gadget needs n >= 4, got {n}")
    return _gadget(n // 2 - 1, (n + 1) // 2 - 1, "max-crossing", n)


def gen_per_edge_gadget(n: int) -> InstanceFile:
    """Instance whose minimum tree has an edge crossed by ``n - 3`` others."""
    if n < 4:
        raise BadSize(f"gadget needs n >= 4, got {n}")
    return _gadget(1, n - 3, "per-edge", n)


GENERATORS = {
    "uniform": gen_uniform,
    "max-crossing": gen_max_crossing_gadget,
    "per-edge": gen_per_edge_gadget,
}


def generate(kind: str, n: int, seed: int = 0, colors: int = 2) -> InstanceFile:
    if kind == "uniform":
        return gen_uniform(n, seed, colors)
    if kind in GENERATORS:
        return GENERATORS[kind](n)
    raise InputError(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}")
