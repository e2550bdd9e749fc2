"""Exact planar primitives on colored point sets.

Orientation signs are evaluated with a floating-point filter and fall back
to exact rational arithmetic whenever the filter cannot certify the sign, so
every predicate below is exact for finite double inputs.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateOverlap, InputError, NotGeneralPosition

# Shewchuk's static error bound for orient2d (epsilon = 2**-53).
_EPS = 2.0 ** -53
_CCW_BOUND = (3.0 + 16.0 * _EPS) * _EPS

GENERAL_POSITION_THRESHOLD = 2000


@dataclass(frozen=True)
class ColoredPoint:
    x: float
    y: float
    color: int = 0
    id: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InputError(f"point {self.id} has a non-finite coordinate")
        if self.color < 0:
            raise InputError(f"point {self.id} has a negative color")

    @property
    def xy(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Segment:
    a: ColoredPoint
    b: ColoredPoint

    def __post_init__(self):
        if (self.a.x, self.a.y) == (self.b.x, self.b.y):
            raise InputError("segment endpoints coincide")


@dataclass(frozen=True)
class AxisRect:
    """Axis-aligned rectangle; membership is half-open ``[lo, hi)``."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self):
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise InputError(f"empty rectangle {self}")

    def contains(self, p) -> bool:
        x, y = _xy(p)
        return self.x_lo <= x < self.x_hi and self.y_lo <= y < self.y_hi

    def contains_closed(self, p) -> bool:
        x, y = _xy(p)
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi

    def union(self, other: "AxisRect") -> "AxisRect":
        return AxisRect(min(self.x_lo, other.x_lo), max(self.x_hi, other.x_hi),
                        min(self.y_lo, other.y_lo), max(self.y_hi, other.y_hi))

    def shares_full_side(self, other: "AxisRect") -> bool:
        """True if the two rectangles are interior-disjoint and glued along a
        complete common side."""
        same_rows = self.y_lo == other.y_lo and self.y_hi == other.y_hi
        same_cols = self.x_lo == other.x_lo and self.x_hi == other.x_hi
        if same_rows and (self.x_hi == other.x_lo or other.x_hi == self.x_lo):
            return True
        if same_cols and (self.y_hi == other.y_lo or other.y_hi == self.y_lo):
            return True
        return False


def _xy(p) -> tuple[float, float]:
    try:
        return p.x, p.y
    except AttributeError:
        return p[0], p[1]


def _exact_orient(px, py, qx, qy, rx, ry) -> int:
    px, py, qx, qy, rx, ry = map(Fraction, (px, py, qx, qy, rx, ry))
    det = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    return (det > 0) - (det < 0)


def orient_xy(px, py, qx, qy, rx, ry) -> int:
    """:func:`orient` on bare coordinates."""
    detleft = (qx - px) * (ry - py)
    detright = (qy - py) * (rx - px)
    det = detleft - detright
    if abs(det) > _CCW_BOUND * (abs(detleft) + abs(detright)):
        return 1 if det > 0 else -1
    if (px == qx and py == qy) or (px == rx and py == ry) or (qx == rx and qy == ry):
        return 0
    return _exact_orient(px, py, qx, qy, rx, ry)


def orient(p, q, r) -> int:
    """Sign of the cross product ``(q - p) x (r - p)``: +1 for a left turn,
    -1 for a right turn, 0 for collinear points."""
    px, py = _xy(p)
    qx, qy = _xy(q)
    rx, ry = _xy(r)
    return orient_xy(px, py, qx, qy, rx, ry)


def orient_many(px, py, qx, qy, rx, ry) -> np.ndarray:
    """Vectorised :func:`orient` over broadcastable coordinate arrays."""
    dqx, dqy = np.subtract(qx, px), np.subtract(qy, py)
    drx, dry = np.subtract(rx, px), np.subtract(ry, py)
    detleft = dqx * dry
    detright = dqy * drx
    det = detleft - detright
    out = np.atleast_1d(np.sign(det).astype(np.int8))
    unsure = np.abs(det) <= _CCW_BOUND * (np.abs(detleft) + np.abs(detright))
    if not unsure.any():
        return out if np.ndim(det) else out[0]
    # coincident points give an exact zero; only genuine near-ties need rationals
    coincident = (((dqx == 0) & (dqy == 0)) | ((drx == 0) & (dry == 0))
                  | ((np.equal(qx, rx)) & (np.equal(qy, ry))))
    unsure = np.atleast_1d(unsure & ~coincident)
    if unsure.any():
        arrs = [np.atleast_1d(a) for a in np.broadcast_arrays(
            *(np.asarray(v, dtype=float) for v in (px, py, qx, qy, rx, ry)))]
        for idx in zip(*np.nonzero(unsure)):
            out[idx] = _exact_orient(*(float(a[idx]) for a in arrs))
    return out if np.ndim(det) else out[0]


def _overlap_len_positive(a, b, c, d) -> bool:
    # collinear segments ab and cd; project onto the dominant axis
    (ax, ay), (bx, by), (cx, cy), (dx, dy) = map(_xy, (a, b, c, d))
    if ax != bx:
        lo1, hi1, lo2, hi2 = min(ax, bx), max(ax, bx), min(cx, dx), max(cx, dx)
    else:
        lo1, hi1, lo2, hi2 = min(ay, by), max(ay, by), min(cy, dy), max(cy, dy)
    return min(hi1, hi2) > max(lo1, lo2)


def crossing_xy(ax, ay, bx, by, cx, cy, dx, dy) -> bool:
    """:func:`proper_crossing` on bare coordinates."""
    o1 = orient_xy(ax, ay, bx, by, cx, cy)
    o2 = orient_xy(ax, ay, bx, by, dx, dy)
    if o1 == 0 and o2 == 0:
        if _overlap_len_positive((ax, ay), (bx, by), (cx, cy), (dx, dy)):
            raise DegenerateOverlap("collinear segments overlap")
        return False
    if o1 * o2 >= 0:
        return False
    return orient_xy(cx, cy, dx, dy, ax, ay) * orient_xy(cx, cy, dx, dy, bx, by) < 0


def proper_crossing(s1, s2) -> bool:
    """True iff the two segments meet in exactly one point interior to both.

    Segments may be :class:`Segment` objects or pairs of points. A shared
    endpoint is not a crossing. Collinear overlapping segments raise
    :class:`DegenerateOverlap`.
    """
    a, b = (s1.a, s1.b) if isinstance(s1, Segment) else s1
    c, d = (s2.a, s2.b) if isinstance(s2, Segment) else s2
    return crossing_xy(*_xy(a), *_xy(b), *_xy(c), *_xy(d))


def crossing_many(ax, ay, bx, by, cx, cy, dx, dy) -> np.ndarray:
    """Vectorised proper-crossing test between segments ab and cd.

    Collinear overlapping pairs raise :class:`DegenerateOverlap`.
    """
    o1 = orient_many(ax, ay, bx, by, cx, cy)
    o2 = orient_many(ax, ay, bx, by, dx, dy)
    both_zero = (o1 == 0) & (o2 == 0)
    if both_zero.any():
        arrs = np.broadcast_arrays(*(np.asarray(v, dtype=float)
                                     for v in (ax, ay, bx, by, cx, cy, dx, dy)))
        for idx in zip(*np.nonzero(both_zero)):
            v = [arr[idx] for arr in arrs]
            if _overlap_len_positive(v[0:2], v[2:4], v[4:6], v[6:8]):
                raise DegenerateOverlap("collinear segments overlap")
    straddle = (o1.astype(np.int16) * o2) < 0
    result = np.zeros(straddle.shape, dtype=bool)
    if straddle.any():
        o3 = orient_many(cx, cy, dx, dy, ax, ay)
        o4 = orient_many(cx, cy, dx, dy, bx, by)
        result = straddle & ((o3.astype(np.int16) * o4) < 0)
    return result


def convex_hull(points: Sequence) -> list:
    """Counterclockwise hull vertices, starting from the lexicographically
    smallest point. Points on a hull edge are not reported as vertices."""
    pts = sorted(set(points), key=lambda p: _xy(p))
    if len(pts) <= 2:
        return list(pts)

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and orient(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and _xy(hull[0]) == _xy(hull[1]):
        return hull[:1]
    return hull


def point_in_convex_polygon(p, hull: Sequence) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (exact)."""
    if len(hull) == 1:
        return 0 if _xy(p) == _xy(hull[0]) else -1
    if len(hull) == 2:
        a, b = hull
        if orient(a, b, p) != 0:
            return -1
        (ax, ay), (bx, by), (x, y) = _xy(a), _xy(b), _xy(p)
        inside = min(ax, bx) <= x <= max(ax, bx) and min(ay, by) <= y <= max(ay, by)
        return 0 if inside else -1
    on_boundary = False
    for i in range(len(hull)):
        s = orient(hull[i], hull[(i + 1) % len(hull)], p)
        if s < 0:
            return -1
        if s == 0:
            on_boundary = True
    return 0 if on_boundary else 1


def dist_point_rect(p, r: AxisRect) -> float:
    """Euclidean distance from ``p`` to the closed rectangle ``r``."""
    x, y = _xy(p)
    dx = max(r.x_lo - x, 0.0, x - r.x_hi)
    dy = max(r.y_lo - y, 0.0, y - r.y_hi)
    return math.hypot(dx, dy)


def dist_points_rect(xs, ys, r: AxisRect) -> np.ndarray:
    dx = np.maximum(np.maximum(r.x_lo - xs, 0.0), xs - r.x_hi)
    dy = np.maximum(np.maximum(r.y_lo - ys, 0.0), ys - r.y_hi)
    return np.hypot(dx, dy)


def angular_sort(apex, points: Iterable) -> list:
    """Sort points counterclockwise around ``apex``.

    Valid only when every point lies in an open half-plane bounded by a line
    through ``apex`` (for instance when ``apex`` is a hull vertex).
    """
    def cmp(p, q):
        return -orient(apex, p, q)

    return sorted(points, key=cmp_to_key(cmp))


# -- general position -------------------------------------------------------

def find_collinear_triple_bruteforce(points: Sequence):
    """O(n^3) scan; returns the first collinear index triple or None."""
    n = len(points)
    if n < 3:
        return None
    xs = np.array([_xy(p)[0] for p in points], dtype=float)
    ys = np.array([_xy(p)[1] for p in points], dtype=float)
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            o = orient_many(xs[i], ys[i], xs[j], ys[j], xs[j + 1:], ys[j + 1:])
            hits = np.nonzero(o == 0)[0]
            if hits.size:
                return (i, j, j + 1 + int(hits[0]))
    return None


def _collinear_from_base(xs, ys, i, js, tol=1e-9):
    dx = xs[js] - xs[i]
    dy = ys[js] - ys[i]
    flip = (dy < 0) | ((dy == 0) & (dx < 0))
    dx = np.where(flip, -dx, dx)
    dy = np.where(flip, -dy, dy)
    ang = np.arctan2(dy, dx)
    order = np.argsort(ang, kind="stable")
    gaps = np.diff(ang[order]) < tol
    if not gaps.any():
        return None
    base = (xs[i], ys[i])
    # runs of near-equal angles; exact parallels always land in one run
    k = 0
    while k < len(gaps):
        if not gaps[k]:
            k += 1
            continue
        stop = k
        while stop < len(gaps) and gaps[stop]:
            stop += 1
        members = [int(js[order[m]]) for m in range(k, stop + 1)]
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                j, l = members[a], members[b]
                if orient(base, (xs[j], ys[j]), (xs[l], ys[l])) == 0:
                    return (int(i), min(j, l), max(j, l))
        k = stop + 1
    return None


def find_collinear_triple(points: Sequence, threshold: int = GENERAL_POSITION_THRESHOLD,
                          sample: int = 400, seed: int = 0):
    """Find three collinear points, or return None.

    For ``n <= threshold`` every point is used as a base and the directions to
    all later points are sorted by angle; nearly parallel neighbours are then
    confirmed with the exact orientation predicate. Above the threshold only
    ``sample`` random bases are tried and a warning is emitted.
    """
    n = len(points)
    if n < 3:
        return None
    xs = np.array([_xy(p)[0] for p in points], dtype=float)
    ys = np.array([_xy(p)[1] for p in points], dtype=float)
    if n <= threshold:
        bases = range(n - 2)
    else:
        warnings.warn(f"general position checked on {sample} sampled base points "
                      f"only (n={n} > {threshold})", stacklevel=2)
        rng = np.random.default_rng(seed)
        bases = sorted(rng.choice(n, size=min(sample, n), replace=False).tolist())
    everything = np.arange(n)
    for i in bases:
        js = everything[i + 1:] if n <= threshold else np.delete(everything, i)
        hit = _collinear_from_base(xs, ys, i, js)
        if hit is not None:
            return tuple(sorted(hit))
    return None


def require_general_position(points: Sequence, threshold: int = GENERAL_POSITION_THRESHOLD):
    seen = set()
    for p in points:
        key = _xy(p)
        if key in seen:
            raise NotGeneralPosition(f"duplicate point {key}")
        seen.add(key)
    hit = find_collinear_triple(points, threshold=threshold)
    if hit is not None:
        raise NotGeneralPosition(f"points {hit} are collinear")
