"""Exhaustive reference solvers for small inputs."""
from __future__ import annotations

import math
from typing import Sequence

from .errors import TooLarge
from .geometry import ColoredPoint, crossing_xy, require_general_position
from .minbst import ColoredTree, _check_colored_input

MAX_ENUMERATION_N = 8
MAX_PLANE_ORACLE_N = 9


def _colored_edges(points: Sequence[ColoredPoint]):
    """Properly colored index pairs sorted by (length, i, j)."""
    out = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            p, q = points[i], points[j]
            if p.color != q.color:
                out.append((math.hypot(p.x - q.x, p.y - q.y), i, j))
    out.sort()
    return out


def _as_tree(points, chosen) -> ColoredTree:
    return ColoredTree(list(points), [(points[i].id, points[j].id) for i, j in chosen])


def enumerate_min_spanning_tree(points: Sequence[ColoredPoint]) -> ColoredTree:
    """Shortest properly colored spanning tree by listing every spanning tree
    (include/exclude recursion over the edge list, no length pruning)."""
    points = list(points)
    _check_colored_input(points)
    if len(points) > MAX_ENUMERATION_N:
        raise TooLarge(f"enumeration oracle limited to n <= {MAX_ENUMERATION_N}")
    n = len(points)
    edges = _colored_edges(points)
    best = [math.inf, None]
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    def rec(k, chosen):
        if len(chosen) == n - 1:
            total = math.fsum(edges[e][0] for e in chosen)
            if total < best[0]:
                best[0], best[1] = total, list(chosen)
            return
        if len(edges) - k < n - 1 - len(chosen):
            return
        _, i, j = edges[k]
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            chosen.append(k)
            rec(k + 1, chosen)
            chosen.pop()
            parent[ri] = ri
        rec(k + 1, chosen)

    rec(0, [])
    if best[1] is None:
        raise TooLarge("no spanning tree found")
    return _as_tree(points, [edges[k][1:] for k in best[1]])


def count_spanning_trees(points: Sequence[ColoredPoint]) -> int:
    """Number of properly colored spanning trees (same recursion, counting)."""
    points = list(points)
    n = len(points)
    edges = _colored_edges(points)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    def rec(k, size):
        if size == n - 1:
            return 1
        if len(edges) - k < n - 1 - size:
            return 0
        _, i, j = edges[k]
        total = 0
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            total += rec(k + 1, size + 1)
            parent[ri] = ri
        return total + rec(k + 1, size)

    return rec(0, 0)


def brute_force_min_plane_tree(points: Sequence[ColoredPoint], *,
                               check_general_position: bool = True) -> ColoredTree:
    """Shortest plane properly colored spanning tree (branch and bound).

    Edges are scanned in increasing length; a branch is cut when it would
    close a cycle, cross a chosen edge, or cannot beat the incumbent even
    with the shortest remaining edges.
    """
    points = list(points)
    _check_colored_input(points)
    if len(points) > MAX_PLANE_ORACLE_N:
        raise TooLarge(f"plane oracle limited to n <= {MAX_PLANE_ORACLE_N}")
    if check_general_position:
        require_general_position(points)
    n = len(points)
    edges = _colored_edges(points)
    m = len(edges)
    xy = [(p.x, p.y) for p in points]

    crosses = [[False] * m for _ in range(m)]
    for a in range(m):
        _, i, j = edges[a]
        for b in range(a + 1, m):
            _, k, l = edges[b]
            if len({i, j, k, l}) < 4:
                continue
            c = crossing_xy(*xy[i], *xy[j], *xy[k], *xy[l])
            crosses[a][b] = crosses[b][a] = c

    lengths = [e[0] for e in edges]
    best = [math.inf, None]
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    def rec(k, chosen, total):
        need = n - 1 - len(chosen)
        if need == 0:
            if total < best[0]:
                best[0], best[1] = total, list(chosen)
            return
        if m - k < need:
            return
        # edges are sorted, so the next `need` lengths are the cheapest finish
        if total + sum(lengths[k:k + need]) >= best[0]:
            return
        _, i, j = edges[k]
        ri, rj = find(i), find(j)
        if ri != rj and not any(crosses[k][c] for c in chosen):
            parent[ri] = rj
            chosen.append(k)
            rec(k + 1, chosen, total + lengths[k])
            chosen.pop()
            parent[ri] = ri
        rec(k + 1, chosen, total)

    rec(0, [], 0.0)
    return _as_tree(points, [edges[k][1:] for k in best[1]])
