"""Plane properly-colored spanning trees from a shifted quadtree.

The pipeline is: scale and translate the input so its bounding square is
``[1, 2]^2``; lay a ``2 x 2`` square with lower-left corner at the shift
vector over it; subdivide into quadrants until cells of side ``1/N`` (with
``N = 2**ceil(log2 n)``) or until a cell is empty or monochromatic; then
merge partial solutions bottom-up, first the two pairs in each row and then
the two rows.

``opt_prime`` measures the reference tree against the same grid: each edge
meeting a level-``i`` grid line contributes ``1/2**i`` to level ``i``. For
every shift the output length is at most ``sqrt(2) L* + 4 sqrt(2) OPT'``.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateExtent, InputError, TooFewPoints, TooLarge
from .geometry import AxisRect, ColoredPoint, require_general_position
from .minbst import ColoredTree, _check_colored_input, min_colored_spanning_tree
from .plane import EMPTY, MONO, TREE, MergeParty, _Ctx, _cone_star_edges, _merge

SQRT2 = math.sqrt(2.0)


def grid_size(n: int) -> int:
    """Smallest power of two >= n."""
    return 1 << max(0, math.ceil(math.log2(n))) if n > 1 else 1


@dataclass(frozen=True)
class Shift:
    x: float
    y: float
    kind: str = "discrete"
    seed: Optional[int] = None
    i: Optional[int] = None
    j: Optional[int] = None
    N: Optional[int] = None

    def __post_init__(self):
        if not (0.0 <= self.x < 1.0 and 0.0 <= self.y < 1.0):
            raise InputError(f"shift ({self.x}, {self.y}) outside [0,1)^2")

    @classmethod
    def discrete(cls, i: int, j: int, N: int) -> "Shift":
        if not (0 <= i < N and 0 <= j < N):
            raise InputError(f"grid shift ({i},{j}) outside 0..{N - 1}")
        return cls(i / N, j / N, "discrete", None, i, j, N)

    @classmethod
    def random(cls, seed: int) -> "Shift":
        x, y = np.random.default_rng(seed).random(2)
        return cls(float(x), float(y), "random", seed)

    @classmethod
    def parse(cls, label: str, n: int) -> "Shift":
        """``random:SEED`` or ``grid:I,J`` (denominator ``grid_size(n)``)."""
        kind, _, arg = label.partition(":")
        try:
            if kind == "random":
                return cls.random(int(arg))
            if kind == "grid":
                i, j = (int(v) for v in arg.split(","))
                return cls.discrete(i, j, grid_size(n))
        except ValueError as exc:
            raise InputError(f"bad shift {label!r}: {exc}") from None
        raise InputError(f"bad shift {label!r}; expected random:SEED or grid:I,J")

    def label(self) -> str:
        if self.kind == "random":
            return f"random:{self.seed}"
        if self.kind == "discrete":
            return f"grid:{self.i},{self.j}"
        return f"({self.x!r},{self.y!r})"


@dataclass(frozen=True)
class Transform:
    """``p' = (p - origin) / side + (1, 1)``."""

    x0: float
    y0: float
    side: float

    def apply(self, x, y):
        return (x - self.x0) / self.side + 1.0, (y - self.y0) / self.side + 1.0

    def invert(self, x, y):
        return (x - 1.0) * self.side + self.x0, (y - 1.0) * self.side + self.y0


def normalize(points: Sequence[ColoredPoint]):
    """Map the smallest enclosing axis-aligned square onto ``[1, 2]^2``."""
    points = list(points)
    if len(points) < 2:
        raise TooFewPoints("need at least 2 points")
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    side = max(max(xs) - min(xs), max(ys) - min(ys))
    if side == 0.0:
        raise DegenerateExtent("all points coincide")
    tf = Transform(min(xs), min(ys), side)
    out = []
    for p in points:
        x, y = tf.apply(p.x, p.y)
        out.append(ColoredPoint(x, y, p.color, p.id))
    return out, tf


# -- quadtree ---------------------------------------------------------------

BICHROMATIC = "bichromatic"


@dataclass
class QNode:
    level: int
    ix: int
    iy: int
    rect: AxisRect
    ids: list[int]
    kind: str
    color: Optional[int] = None
    children: list["QNode"] = field(default_factory=list)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def leaves(self):
        return [nd for nd in self.walk() if not nd.children]


@dataclass
class ShiftedQuadtree:
    shift: Shift
    N: int
    root: QNode

    @property
    def max_level(self) -> int:
        return int(math.log2(self.N))

    @property
    def depth(self) -> int:
        return max(nd.level for nd in self.root.walk()) + 1

    def grid_lines(self, level: int):
        """x and y coordinates of the level-``level`` grid lines inside Q."""
        side = 2.0 ** -level
        k = np.arange(2 ** (level + 1) + 1)
        return self.shift.x + k * side, self.shift.y + k * side


def square_rect(shift: Shift, level: int, ix: int, iy: int) -> AxisRect:
    side = 2.0 ** -level
    return AxisRect(shift.x + ix * side, shift.x + (ix + 1) * side,
                    shift.y + iy * side, shift.y + (iy + 1) * side)


def _leaf_index(v: np.ndarray, origin: float, N: int) -> np.ndarray:
    side = 1.0 / N
    top = 2 * N - 1
    k = np.clip(np.floor((v - origin) * N).astype(np.int64), 0, top)
    while True:
        lo = origin + k * side
        hi = origin + (k + 1) * side
        fixed = np.where(v < lo, k - 1, np.where(v >= hi, k + 1, k))
        fixed = np.clip(fixed, 0, top)
        if (fixed == k).all():
            return k
        k = fixed


def build_quadtree(points: Sequence[ColoredPoint], shift: Shift, N: Optional[int] = None) -> ShiftedQuadtree:
    """Shifted quadtree over normalized points.

    Cells are half-open; a point on the top or right edge of Q itself is
    assigned to the last row or column.
    """
    points = list(points)
    N = N or grid_size(max(len(points), 1))
    L = int(math.log2(N))
    xs = np.array([p.x for p in points], dtype=float)
    ys = np.array([p.y for p in points], dtype=float)
    kx = _leaf_index(xs, shift.x, N).tolist()
    ky = _leaf_index(ys, shift.y, N).tolist()
    cs = [p.color for p in points]
    ids = [p.id for p in points]

    def build(level, ix, iy, rows):
        rect = square_rect(shift, level, ix, iy)
        if not rows:
            return QNode(level, ix, iy, rect, [], EMPTY)
        colors = {cs[r] for r in rows}
        if len(colors) == 1:
            return QNode(level, ix, iy, rect, [ids[r] for r in rows], MONO, colors.pop())
        node = QNode(level, ix, iy, rect, [ids[r] for r in rows], BICHROMATIC)
        if level == L:
            return node
        bit = L - (level + 1)
        quads = ([], [], [], [])
        for r in rows:
            quads[((ky[r] >> bit) & 1) * 2 + ((kx[r] >> bit) & 1)].append(r)
        for k, sub in enumerate(quads):
            cy, cx = divmod(k, 2)
            node.children.append(build(level + 1, 2 * ix + cx, 2 * iy + cy, sub))
        return node

    root = build(-1, 0, 0, list(range(len(points))))
    return ShiftedQuadtree(shift, N, root)


# -- approximation ----------------------------------------------------------

@dataclass
class MergeRecord:
    level: int
    case: int
    first: MergeParty
    second: MergeParty
    new_edges: int


def _solve(ctx: _Ctx, node: QNode, trace) -> MergeParty:
    if not node.children:
        pts = [ctx.points[i] for i in node.ids]
        if node.kind == EMPTY:
            return MergeParty(EMPTY, node.rect)
        if node.kind == MONO:
            return MergeParty(MONO, node.rect, pts)
        edges = _cone_star_edges(ctx, node.ids)
        return MergeParty(TREE, node.rect, pts, edges)
    bl, br, tl, tr = (_solve(ctx, c, trace) for c in node.children)
    local = [] if trace is not None else None
    bottom = _merge(ctx, bl, br, local)
    top = _merge(ctx, tl, tr, local)
    party = _merge(ctx, bottom, top, local)
    if trace is not None:
        trace.extend(MergeRecord(node.level, *rec) for rec in local)
    return party


def _approx_edges(ctx: _Ctx, norm: Sequence[ColoredPoint], shift: Shift, N: int, trace=None):
    qt = build_quadtree(norm, shift, N)
    party = _solve(ctx, qt.root, trace)
    return party.edges, qt


def _prepare(points, validate: bool):
    points = list(points)
    _check_colored_input(points)
    norm, tf = normalize(points)
    if validate:
        require_general_position(points)
        require_general_position(norm)
    return points, norm, tf


def approx_tree(points: Sequence[ColoredPoint], shift: Shift, *, validate: bool = True,
                trace: Optional[list] = None) -> ColoredTree:
    """Plane properly-colored spanning tree for one quadtree shift.

    The returned tree is over the original points. Pass a list as ``trace``
    to collect one :class:`MergeRecord` per merge that added edges.
    """
    points, norm, _ = _prepare(points, validate)
    N = grid_size(len(points))
    edges, _ = _approx_edges(_Ctx(norm), norm, shift, N, trace)
    return ColoredTree(points, sorted(edges))


def _lengths(points: Sequence[ColoredPoint]):
    size = max(p.id for p in points) + 1
    xs, ys = np.zeros(size), np.zeros(size)
    for p in points:
        xs[p.id], ys[p.id] = p.x, p.y
    return xs, ys


def _edges_length(xs, ys, edges) -> float:
    return math.fsum(math.hypot(xs[a] - xs[b], ys[a] - ys[b]) for a, b in edges)


def _shift_chunk(args):
    points, norm, N, indices = args
    ctx = _Ctx(norm)
    xs, ys = _lengths(points)
    out = []
    for idx in indices:
        shift = Shift.discrete(idx // N, idx % N, N)
        edges, _ = _approx_edges(ctx, norm, shift, N)
        out.append((_edges_length(xs, ys, edges), idx, sorted(edges)))
    return out


def _worker_count(workers: Optional[int]) -> int:
    if workers is None:
        workers = int(os.environ.get("BICHROMA_THREADS", "1") or 1)
    return max(1, workers)


def all_discrete_lengths(points: Sequence[ColoredPoint], *, validate: bool = True,
                         workers: Optional[int] = None):
    """``(length, shift index, edges)`` for every discrete shift, in shift order.

    Shift index ``k`` stands for ``Shift.discrete(k // N, k % N, N)``.
    """
    points, norm, _ = _prepare(points, validate)
    N = grid_size(len(points))
    total = N * N
    workers = min(_worker_count(workers), total)
    if workers == 1:
        return _shift_chunk((points, norm, N, range(total)))
    chunks = [(points, norm, N, range(w, total, workers)) for w in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        rows = [r for part in pool.map(_shift_chunk, chunks) for r in part]
    return sorted(rows, key=lambda r: r[1])


def derandomized_tree(points: Sequence[ColoredPoint], *, validate: bool = True,
                      workers: Optional[int] = None):
    """Shortest tree over all ``N * N`` discrete shifts, with the winning shift.

    Ties on length go to the smaller shift index, so the result does not depend
    on the number of workers.
    """
    points = list(points)
    rows = all_discrete_lengths(points, validate=validate, workers=workers)
    length, idx, edges = min(rows, key=lambda r: (r[0], r[1]))
    N = grid_size(len(points))
    return ColoredTree(points, edges), Shift.discrete(idx // N, idx % N, N)


# -- OPT' -------------------------------------------------------------------

@dataclass
class OptPrimeProfile:
    per_level: list[float]
    counts: list[int]
    total: float


def _hits(lo: np.ndarray, hi: np.ndarray, lines: np.ndarray) -> np.ndarray:
    """Whether each closed interval ``[lo, hi]`` contains one of ``lines``."""
    k = np.searchsorted(lines, lo, side="left")
    inside = k < len(lines)
    hit = np.zeros(len(lo), dtype=bool)
    hit[inside] = lines[k[inside]] <= hi[inside]
    return hit


def _edge_extents(tree: ColoredTree):
    by_id = tree._index()
    e = np.array(tree.edges, dtype=np.int64).reshape(-1, 2)
    ax = np.array([by_id[a].x for a in e[:, 0]], dtype=float)
    bx = np.array([by_id[b].x for b in e[:, 1]], dtype=float)
    ay = np.array([by_id[a].y for a in e[:, 0]], dtype=float)
    by = np.array([by_id[b].y for b in e[:, 1]], dtype=float)
    return np.minimum(ax, bx), np.maximum(ax, bx), np.minimum(ay, by), np.maximum(ay, by)


def opt_prime(reference_tree: ColoredTree, qt: ShiftedQuadtree) -> OptPrimeProfile:
    """Per-level boundary-crossing weight of ``reference_tree``.

    An edge counts at level ``i`` if its closed segment meets a vertical or
    horizontal level-``i`` grid line of Q; the weight is ``count / 2**i``.
    """
    xlo, xhi, ylo, yhi = _edge_extents(reference_tree)
    per_level, counts = [], []
    for level in range(qt.max_level + 1):
        gx, gy = qt.grid_lines(level)
        count = int((_hits(xlo, xhi, gx) | _hits(ylo, yhi, gy)).sum())
        counts.append(count)
        per_level.append(count / 2 ** level)
    return OptPrimeProfile(per_level, counts, math.fsum(per_level))


def length_bound(minbst_length: float, opt_prime_total: float) -> float:
    """Per-shift upper bound ``sqrt(2) L* + 4 sqrt(2) OPT'``."""
    return SQRT2 * minbst_length + 4 * SQRT2 * opt_prime_total


def expected_opt_prime_bound(minbst_length: float, N: int) -> float:
    """``(sqrt(2) + 2)(1 + log2 N) L*``: bound on E[OPT'] for discrete shifts."""
    return (SQRT2 + 2) * (1 + math.log2(N)) * minbst_length


def derandomized_bound(minbst_length: float, N: int) -> float:
    return SQRT2 * minbst_length + 4 * SQRT2 * expected_opt_prime_bound(minbst_length, N)


DEFAULT_MAX_ENUMERATION_N = 256


def expected_opt_prime_discrete(points: Sequence[ColoredPoint], *,
                                max_n: int = DEFAULT_MAX_ENUMERATION_N,
                                reference: Optional[ColoredTree] = None) -> float:
    """Exact mean of ``OPT'`` over all ``N * N`` discrete shifts.

    The reference tree defaults to the minimum colored spanning tree of the
    normalized points. Vertical and horizontal hits are tabulated per shift
    coordinate and then combined for every one of the ``N * N`` shifts.
    """
    points = list(points)
    if len(points) > max_n:
        raise TooLarge(f"n={len(points)} exceeds the enumeration budget {max_n}")
    norm, _ = normalize(points)
    ref = reference or min_colored_spanning_tree(norm)
    N = grid_size(len(points))
    L = int(math.log2(N))
    xlo, xhi, ylo, yhi = _edge_extents(ref)
    n_edges = len(ref.edges)
    hx = np.zeros((N, L + 1, n_edges), dtype=bool)
    hy = np.zeros((N, L + 1, n_edges), dtype=bool)
    for s in range(N):
        origin = s / N
        for level in range(L + 1):
            lines = origin + np.arange(2 ** (level + 1) + 1) * 2.0 ** -level
            hx[s, level] = _hits(xlo, xhi, lines)
            hy[s, level] = _hits(ylo, yhi, lines)
    weights = 2.0 ** -np.arange(L + 1)
    totals = np.empty((N, N))
    for sx in range(N):
        counts = (hx[sx][None, :, :] | hy).sum(axis=2)
        totals[sx] = counts @ weights
    return float(math.fsum(totals.ravel()) / (N * N))


def charging_violations(trace: Sequence[MergeRecord], reference_tree: ColoredTree) -> list[str]:
    """Merges whose new edges are not paid for by reference-tree edges leaving
    the merged parties (at most two new edges per leaving edge in the
    cone-star and attachment cases, at least one leaving edge for a bridge)."""
    problems = []
    for rec in trace:
        first = {p.id for p in rec.first.points}
        second = {p.id for p in rec.second.points}
        leaving = sum(1 for a, b in reference_tree.edges
                      if ((a in first) != (b in first)) or ((a in second) != (b in second)))
        if rec.case in (1, 3) and rec.new_edges > 2 * leaving:
            problems.append(f"level {rec.level} case {rec.case}: {rec.new_edges} new edges, "
                            f"{leaving} leaving reference edges")
        if rec.case == 2 and leaving < 1:
            problems.append(f"level {rec.level} case 2: no leaving reference edge")
    return problems
