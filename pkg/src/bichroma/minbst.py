"""Minimum properly-colored spanning trees.

For two colors this is the minimum bichromatic spanning tree. The tree is
built with Prim's algorithm over the implicit complete graph of differently
colored pairs (quadratic time, vectorised with numpy). Candidate edges are
ordered by ``(squared length, min id, max id)`` so the output is the unique
minimum under that total order, even for cocircular inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InputError, Monochromatic, TooFewPoints
from .geometry import ColoredPoint


@dataclass
class ColoredTree:
    points: list[ColoredPoint]
    edges: list[tuple[int, int]]
    total_length: float = field(default=float("nan"))

    def __post_init__(self):
        self.edges = [(min(a, b), max(a, b)) for a, b in self.edges]
        if math.isnan(self.total_length):
            self.total_length = tree_length(self)

    @property
    def n(self) -> int:
        return len(self.points)

    def point(self, pid: int) -> ColoredPoint:
        return self._index()[pid]

    def _index(self) -> dict[int, ColoredPoint]:
        idx = getattr(self, "_by_id", None)
        if idx is None or len(idx) != len(self.points):
            idx = {p.id: p for p in self.points}
            object.__setattr__(self, "_by_id", idx)
        return idx

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {p.id: [] for p in self.points}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def point_arrays(points: Sequence[ColoredPoint]):
    """Coordinates, colors and ids as numpy arrays."""
    xs = np.fromiter((p.x for p in points), dtype=float, count=len(points))
    ys = np.fromiter((p.y for p in points), dtype=float, count=len(points))
    cs = np.fromiter((p.color for p in points), dtype=np.int64, count=len(points))
    ids = np.fromiter((p.id for p in points), dtype=np.int64, count=len(points))
    return xs, ys, cs, ids


def tree_length(tree: ColoredTree) -> float:
    by_id = tree._index()
    return math.fsum(math.hypot(by_id[a].x - by_id[b].x, by_id[a].y - by_id[b].y)
                     for a, b in tree.edges)


def _check_colored_input(points: Sequence[ColoredPoint]):
    if len(points) < 2:
        raise TooFewPoints(f"need at least 2 points, got {len(points)}")
    if len({p.id for p in points}) != len(points):
        raise InputError("point ids are not unique")
    if len({p.color for p in points}) < 2:
        raise Monochromatic("all points share one color")


def min_colored_spanning_tree(points: Sequence[ColoredPoint]) -> ColoredTree:
    """Minimum-length spanning tree whose edges join differently colored
    points."""
    points = list(points)
    _check_colored_input(points)
    xs, ys, cs, ids = point_arrays(points)
    n = len(points)

    in_tree = np.zeros(n, dtype=bool)
    best_d2 = np.full(n, np.inf)
    best_lo = np.full(n, np.iinfo(np.int64).max)
    best_hi = np.full(n, np.iinfo(np.int64).max)
    best_from = np.full(n, -1)
    edges = []

    u = int(np.argmin(ids))
    for _ in range(n - 1):
        in_tree[u] = True
        d2 = (xs - xs[u]) ** 2 + (ys - ys[u]) ** 2
        lo = np.minimum(ids, ids[u])
        hi = np.maximum(ids, ids[u])
        ok = (~in_tree) & (cs != cs[u])
        better = ok & ((d2 < best_d2)
                       | ((d2 == best_d2) & ((lo < best_lo)
                                             | ((lo == best_lo) & (hi < best_hi)))))
        best_d2[better] = d2[better]
        best_lo[better] = lo[better]
        best_hi[better] = hi[better]
        best_from[better] = u

        fringe = np.where(in_tree, np.inf, best_d2)
        m = fringe.min()
        ties = np.nonzero(fringe == m)[0]
        if len(ties) == 1:
            v = int(ties[0])
        else:
            order = np.lexsort((best_hi[ties], best_lo[ties]))
            v = int(ties[order[0]])
        edges.append((int(ids[best_from[v]]), int(ids[v])))
        u = v

    edges.sort()
    return ColoredTree(points, edges)


def closest_pair_bichromatic(points: Sequence[ColoredPoint]) -> tuple[ColoredPoint, ColoredPoint]:
    """Closest pair of differently colored points, ordered by (color, id).

    Ties on distance are broken by the lexicographic id pair.
    """
    points = list(points)
    if len(points) < 2:
        raise TooFewPoints("need at least 2 points")
    if len({p.color for p in points}) < 2:
        raise Monochromatic("all points share one color")
    xs, ys, cs, ids = point_arrays(points)
    best = None
    for i in range(len(points)):
        d2 = (xs[i + 1:] - xs[i]) ** 2 + (ys[i + 1:] - ys[i]) ** 2
        d2[cs[i + 1:] == cs[i]] = np.inf
        if d2.size == 0:
            continue
        m = d2.min()
        if not np.isfinite(m):
            continue
        for j in np.nonzero(d2 == m)[0] + i + 1:
            key = (m, min(ids[i], ids[j]), max(ids[i], ids[j]))
            if best is None or key < best[0]:
                best = (key, i, int(j))
    _, i, j = best
    p, q = sorted((points[i], points[j]), key=lambda pt: (pt.color, pt.id))
    return p, q


def tree_problems(tree: ColoredTree, rel_tol: float = 1e-12) -> list[str]:
    """Violations of the spanning / properly-colored / length invariants."""
    problems = []
    by_id = tree._index()
    n = len(tree.points)
    if len(by_id) != n:
        problems.append("duplicate point ids")
    if len(tree.edges) != n - 1:
        problems.append(f"{len(tree.edges)} edges for {n} points")
    parent = {pid: pid for pid in by_id}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in tree.edges:
        if a not in by_id or b not in by_id:
            problems.append(f"edge ({a},{b}) references an unknown point")
            continue
        if by_id[a].color == by_id[b].color:
            problems.append(f"edge ({a},{b}) is monochromatic")
        ra, rb = find(a), find(b)
        if ra == rb:
            problems.append(f"edge ({a},{b}) closes a cycle")
        parent[ra] = rb
    if len({find(pid) for pid in by_id}) > 1:
        problems.append("tree is disconnected")
    if not problems:
        recomputed = tree_length(tree)
        if abs(recomputed - tree.total_length) > rel_tol * max(1.0, recomputed):
            problems.append(f"stored length {tree.total_length} != {recomputed}")
    return problems
