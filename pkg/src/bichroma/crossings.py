"""Crossing structure of geometric spanning trees.

The crossing graph has one vertex per tree edge and one edge per pair of
properly crossing tree edges. For a minimum bichromatic spanning tree on
points in general position the following are expected to hold, and
:func:`verify_minbst_properties` checks each of them:

* the crossing graph is triangle-free (no three pairwise crossing edges);
* a closest bichromatic pair is a tree edge and that edge is crossing-free;
* there are at most ``floor(n^2/4) - n + 1`` crossings in total;
* no edge crosses more than ``n - 3`` others;
* for two crossing edges, the tree path linking them ends in points of
  different colors.
"""
from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import EdgeNotInTree, InputError, Monochromatic, TooFewPoints
from .geometry import ColoredPoint, crossing_many, require_general_position
from .minbst import ColoredTree, closest_pair_bichromatic, point_arrays


def _edge_coords(tree: ColoredTree):
    by_id = tree._index()
    e = np.array(tree.edges, dtype=np.int64).reshape(-1, 2)
    ax = np.array([by_id[a].x for a in e[:, 0]], dtype=float)
    ay = np.array([by_id[a].y for a in e[:, 0]], dtype=float)
    bx = np.array([by_id[b].x for b in e[:, 1]], dtype=float)
    by = np.array([by_id[b].y for b in e[:, 1]], dtype=float)
    return ax, ay, bx, by


def crossing_pairs(tree: ColoredTree) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)``, ``i < j``, of properly crossing tree edges."""
    m = len(tree.edges)
    if m < 2:
        return []
    ax, ay, bx, by = _edge_coords(tree)
    xlo, xhi = np.minimum(ax, bx), np.maximum(ax, bx)
    ylo, yhi = np.minimum(ay, by), np.maximum(ay, by)
    pairs = []
    for i in range(m - 1):
        j = np.arange(i + 1, m)
        near = ((xlo[j] <= xhi[i]) & (xhi[j] >= xlo[i])
                & (ylo[j] <= yhi[i]) & (yhi[j] >= ylo[i]))
        j = j[near]
        if j.size == 0:
            continue
        hit = crossing_many(ax[i], ay[i], bx[i], by[i], ax[j], ay[j], bx[j], by[j])
        pairs.extend((i, int(k)) for k in j[hit])
    return pairs


def is_plane(tree: ColoredTree) -> bool:
    return not crossing_pairs(tree)


def crossing_graph(m: int, pairs: Sequence[tuple[int, int]]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(m)]
    for i, j in pairs:
        adj[i].add(j)
        adj[j].add(i)
    return adj


def _triangle_free(adj: list[set[int]]) -> bool:
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            if v > u and adj[u] & adj[v]:
                return False
    return True


def is_quasi_plane(tree: ColoredTree) -> bool:
    """True iff no three edges pairwise cross."""
    return _triangle_free(crossing_graph(len(tree.edges), crossing_pairs(tree)))


def odd_girth(adj: list[set[int]]) -> Optional[int]:
    """Length of the shortest odd cycle, or None for a bipartite graph."""
    best = None
    for root in range(len(adj)):
        dist = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
                elif dist[v] == dist[u]:
                    length = 2 * dist[u] + 1
                    if best is None or length < best:
                        best = length
    return best


def path_between_edges(tree: ColoredTree, e1, e2) -> list[int]:
    """Tree path joining edges ``e1`` and ``e2`` (given as id pairs).

    The path holds exactly one endpoint of each edge; it is a single vertex
    when the edges share one.
    """
    edges = set(tree.edges)
    e1 = (min(e1), max(e1))
    e2 = (min(e2), max(e2))
    for e in (e1, e2):
        if e not in edges:
            raise EdgeNotInTree(f"edge {e} is not in the tree")
    if e1 == e2:
        raise InputError("the two edges must differ")
    adj = tree.adjacency()
    start = e1[0]
    parent = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in parent:
                parent[v] = u
                queue.append(v)

    def path_to(v):
        out = []
        while v is not None:
            out.append(v)
            v = parent[v]
        return out[::-1]

    path = min((path_to(e2[0]), path_to(e2[1])), key=len)
    if len(path) > 1 and path[1] == e1[1]:
        path = path[1:]
    return path


@dataclass
class CrossingReport:
    n: int
    crossing_pairs: list[tuple[int, int]]
    crossing_count: int
    per_edge_max: int
    crossing_graph: list[list[int]]
    quasi_plane: bool
    plane: bool
    prop1: dict = field(default_factory=dict)
    prop2_bound_ok: bool = True
    prop3_bound_ok: bool = True
    lemma3_ok: bool = True
    length_ties: bool = False
    odd_girth: Optional[int] = None

    @property
    def all_ok(self) -> bool:
        return (self.quasi_plane and all(self.prop1.values()) and self.prop2_bound_ok
                and self.prop3_bound_ok and self.lemma3_ok)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["crossing_pairs"] = [list(p) for p in self.crossing_pairs]
        return d

    def to_text(self) -> str:
        lines = [
            f"n                      {self.n}",
            f"crossings              {self.crossing_count}",
            f"max crossings per edge {self.per_edge_max}",
            f"plane                  {self.plane}",
            f"quasi-plane            {self.quasi_plane}",
            f"closest pair is edge   {self.prop1.get('closest_pair_is_edge')}",
            f"that edge uncrossed    {self.prop1.get('that_edge_crossing_free')}",
            f"total crossing bound   {self.prop2_bound_ok}",
            f"per-edge bound         {self.prop3_bound_ok}",
            f"path endpoint colors   {self.lemma3_ok}",
            f"length ties            {self.length_ties}",
            f"odd girth              {self.odd_girth}",
        ]
        return "\n".join(lines) + "\n"


def max_total_crossings(n: int) -> int:
    return n * n // 4 - n + 1


def max_edge_crossings(n: int) -> int:
    return max(n - 3, 0)


def _has_length_ties(points: Sequence[ColoredPoint]) -> bool:
    xs, ys, cs, _ = point_arrays(points)
    d2 = (xs[:, None] - xs[None, :]) ** 2 + (ys[:, None] - ys[None, :]) ** 2
    iu = np.triu_indices(len(points), 1)
    vals = d2[iu][cs[iu[0]] != cs[iu[1]]]
    return len(np.unique(vals)) < len(vals)


def verify_minbst_properties(points: Sequence[ColoredPoint], tree: ColoredTree, *,
                             check_general_position: bool = True) -> CrossingReport:
    """Crossing statistics of ``tree`` and the structural checks listed in the
    module docstring. ``tree`` is assumed to be a minimum tree of ``points``."""
    points = list(points)
    n = len(points)
    if n < 2:
        raise TooFewPoints("need at least 2 points")
    if len({p.color for p in points}) < 2:
        raise Monochromatic("all points share one color")
    if check_general_position:
        require_general_position(points)

    pairs = crossing_pairs(tree)
    m = len(tree.edges)
    adj = crossing_graph(m, pairs)
    degrees = [len(a) for a in adj]
    per_edge_max = max(degrees, default=0)

    p, q = closest_pair_bichromatic(points)
    closest = (min(p.id, q.id), max(p.id, q.id))
    edge_index = {e: k for k, e in enumerate(tree.edges)}
    in_tree = closest in edge_index
    prop1 = {
        "closest_pair_is_edge": in_tree,
        "that_edge_crossing_free": in_tree and degrees[edge_index[closest]] == 0,
    }

    colors = {pt.id: pt.color for pt in tree.points}
    paths_ok = True
    for i, j in pairs:
        path = path_between_edges(tree, tree.edges[i], tree.edges[j])
        if colors[path[0]] == colors[path[-1]]:
            paths_ok = False
            break

    return CrossingReport(
        n=n,
        crossing_pairs=pairs,
        crossing_count=len(pairs),
        per_edge_max=per_edge_max,
        crossing_graph=[sorted(a) for a in adj],
        quasi_plane=_triangle_free(adj),
        plane=not pairs,
        prop1=prop1,
        prop2_bound_ok=len(pairs) <= max_total_crossings(n),
        prop3_bound_ok=n < 3 or per_edge_max <= max_edge_crossings(n),
        lemma3_ok=paths_ok,
        length_ties=_has_length_ties(points),
        odd_girth=odd_girth(adj),
    )
