"""Constructive primitives for plane properly-colored trees.

* :func:`cone_star_tree` builds a plane tree on any point set with at least
  two colors: spokes from a hull-vertex apex to every point of another
  color, and each remaining point joined to the counterclockwise spoke of
  the cone containing it.
* :func:`visible_edge` / :func:`attach_point` connect an outside point to a
  plane tree through an edge it sees entirely.
* :func:`merge_parties` combines the partial solutions of two adjacent
  rectangles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (ColorConflict, GeometryViolation, InputError, InsideHull,
                     InternalError, Monochromatic, TooFewPoints)
from .geometry import (AxisRect, ColoredPoint, angular_sort, convex_hull,
                       crossing_many, crossing_xy, orient,
                       orient_many, orient_xy, point_in_convex_polygon)
from .minbst import ColoredTree

EMPTY, MONO, TREE = "empty", "mono", "tree"

# trees with at most this many edges are searched with scalar code
SMALL_TREE = 256


class _Ctx:
    """Coordinate and color arrays indexed by point id."""

    def __init__(self, points: Sequence[ColoredPoint]):
        size = max(p.id for p in points) + 1
        self.x = np.zeros(size)
        self.y = np.zeros(size)
        self.c = np.full(size, -1, dtype=np.int64)
        self.points: dict[int, ColoredPoint] = {}
        for p in points:
            if p.id in self.points:
                raise InputError(f"duplicate point id {p.id}")
            self.points[p.id] = p
            self.x[p.id], self.y[p.id], self.c[p.id] = p.x, p.y, p.color
        self.lx, self.ly, self.lc = self.x.tolist(), self.y.tolist(), self.c.tolist()

    def xy(self, pid):
        return (self.x[pid], self.y[pid])


@dataclass
class MergeParty:
    """Partial solution owned by one square or rectangle."""

    kind: str
    rect: AxisRect
    points: list[ColoredPoint] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def color(self) -> Optional[int]:
        return self.points[0].color if self.kind == MONO else None

    @property
    def tree(self) -> ColoredTree:
        if self.kind != TREE:
            raise InputError(f"{self.kind} party has no tree")
        return ColoredTree(list(self.points), list(self.edges))

    @classmethod
    def from_points(cls, rect: AxisRect, points: Sequence[ColoredPoint]) -> "MergeParty":
        """Empty or Mono party; bichromatic point sets get a cone-star tree."""
        points = list(points)
        if not points:
            return cls(EMPTY, rect)
        if len({p.color for p in points}) == 1:
            return cls(MONO, rect, points)
        ctx = _Ctx(points)
        return cls(TREE, rect, points, _cone_star_edges(ctx, [p.id for p in points]))


# -- cone-star tree ---------------------------------------------------------

def _cone_star_edges(ctx: _Ctx, ids: Sequence[int]) -> list[tuple[int, int]]:
    ids = list(ids)
    apex = min(ids, key=lambda i: (ctx.x[i], ctx.y[i], i))
    apex_color = ctx.c[apex]
    apex_xy = ctx.xy(apex)
    others = [i for i in ids if i != apex]
    if all(ctx.c[i] == apex_color for i in others):
        raise Monochromatic("cone-star tree needs two colors")
    # apex is lexicographically smallest, so all others lie in a half-plane
    ordered = angular_sort(apex_xy, [(ctx.x[i], ctx.y[i], i) for i in others])
    edges = []
    current = None
    pending = []
    for x, y, i in reversed(ordered):
        if ctx.c[i] != apex_color:
            edges.append((apex, i))
            if current is None:
                edges.extend((i, j) for j in pending)
                pending = []
            current = i
        elif current is None:
            pending.append(i)
        else:
            edges.append((current, i))
    return sorted((min(a, b), max(a, b)) for a, b in edges)


def cone_star_tree(points: Sequence[ColoredPoint]) -> ColoredTree:
    """Plane properly-colored spanning tree of ``points`` (general position)."""
    points = list(points)
    if len(points) < 2:
        raise TooFewPoints("need at least 2 points")
    ctx = _Ctx(points)
    return ColoredTree(points, _cone_star_edges(ctx, [p.id for p in points]))


# -- visibility -------------------------------------------------------------

def _strictly_outside_hull(ctx: _Ctx, q: int, vids: np.ndarray) -> bool:
    qx, qy = ctx.x[q], ctx.y[q]
    vx, vy = ctx.x[vids], ctx.y[vids]
    if len(vids) == 1:
        return not (vx[0] == qx and vy[0] == qy)
    dx, dy = vx - qx, vy - qy
    rx, ry = dx.mean(), dy.mean()
    if rx != 0.0 or ry != 0.0:
        ang = np.arctan2(rx * dy - ry * dx, rx * dx + ry * dy)
        k = int(np.argmin(ang))
        s = orient_many(qx, qy, vx[k], vy[k], vx, vy)
        if (s >= 0).all():
            on_line = s == 0
            if (dx[on_line] * dx[k] + dy[on_line] * dy[k] > 0).all():
                return True
    hull = convex_hull([(float(a), float(b)) for a, b in zip(vx, vy)])
    return point_in_convex_polygon((qx, qy), hull) < 0


def _sees(ctx: _Ctx, q: int, a: int, b: int, vids: np.ndarray, edges: np.ndarray) -> bool:
    qx, qy = ctx.x[q], ctx.y[q]
    ax, ay, bx, by = ctx.x[a], ctx.y[a], ctx.x[b], ctx.y[b]
    o = orient((qx, qy), (ax, ay), (bx, by))
    if o == 0:
        return False
    lo_x, hi_x = min(qx, ax, bx), max(qx, ax, bx)
    lo_y, hi_y = min(qy, ay, by), max(qy, ay, by)

    vx, vy = ctx.x[vids], ctx.y[vids]
    near = (vx > lo_x) & (vx < hi_x) & (vy > lo_y) & (vy < hi_y) & (vids != a) & (vids != b)
    if near.any():
        # the three triangle sides q->a, a->b, b->q against every nearby vertex
        sx = np.array([[qx], [ax], [bx]])
        sy = np.array([[qy], [ay], [by]])
        tx = np.array([[ax], [bx], [qx]])
        ty = np.array([[ay], [by], [qy]])
        signs = orient_many(sx, sy, tx, ty, vx[near], vy[near])
        if (signs == o).all(axis=0).any():
            return False

    if len(edges):
        e0, e1 = edges[:, 0], edges[:, 1]
        cx, cy, dx, dy = ctx.x[e0], ctx.y[e0], ctx.x[e1], ctx.y[e1]
        near = ((np.maximum(cx, dx) > lo_x) & (np.minimum(cx, dx) < hi_x)
                & (np.maximum(cy, dy) > lo_y) & (np.minimum(cy, dy) < hi_y))
        if near.any():
            # segments q-a and q-b against every nearby tree edge
            tx = np.array([[ax], [bx]])
            ty = np.array([[ay], [by]])
            if crossing_many(qx, qy, tx, ty, cx[near], cy[near], dx[near], dy[near]).any():
                return False
    return True


def _outside_hull_small(ctx: _Ctx, q: int, vids: list) -> bool:
    X, Y = ctx.lx, ctx.ly
    qx, qy = X[q], Y[q]
    if len(vids) == 1:
        return not (X[vids[0]] == qx and Y[vids[0]] == qy)
    rx = sum(X[v] for v in vids) / len(vids) - qx
    ry = sum(Y[v] for v in vids) / len(vids) - qy
    if rx != 0.0 or ry != 0.0:
        k = min(vids, key=lambda v: math.atan2(rx * (Y[v] - qy) - ry * (X[v] - qx),
                                               rx * (X[v] - qx) + ry * (Y[v] - qy)))
        kx, ky = X[k], Y[k]
        for v in vids:
            s = orient_xy(qx, qy, kx, ky, X[v], Y[v])
            if s < 0 or (s == 0 and (X[v] - qx) * (kx - qx) + (Y[v] - qy) * (ky - qy) <= 0):
                break
        else:
            return True
    hull = convex_hull([(X[v], Y[v]) for v in vids])
    return point_in_convex_polygon((qx, qy), hull) < 0


def _sees_small(ctx: _Ctx, q: int, a: int, b: int, vids: list, edges: list) -> bool:
    X, Y = ctx.lx, ctx.ly
    qx, qy, ax, ay, bx, by = X[q], Y[q], X[a], Y[a], X[b], Y[b]
    o = orient_xy(qx, qy, ax, ay, bx, by)
    if o == 0:
        return False
    lo_x, hi_x = min(qx, ax, bx), max(qx, ax, bx)
    lo_y, hi_y = min(qy, ay, by), max(qy, ay, by)
    for v in vids:
        vx, vy = X[v], Y[v]
        if lo_x < vx < hi_x and lo_y < vy < hi_y and v != a and v != b:
            if (orient_xy(qx, qy, ax, ay, vx, vy) == o and orient_xy(ax, ay, bx, by, vx, vy) == o
                    and orient_xy(bx, by, qx, qy, vx, vy) == o):
                return False
    for c, d in edges:
        cx, cy, dx, dy = X[c], Y[c], X[d], Y[d]
        if (max(cx, dx) <= lo_x or min(cx, dx) >= hi_x
                or max(cy, dy) <= lo_y or min(cy, dy) >= hi_y):
            continue
        if crossing_xy(qx, qy, ax, ay, cx, cy, dx, dy) or crossing_xy(qx, qy, bx, by, cx, cy, dx, dy):
            return False
    return True


def _visible_edge_small(ctx: _Ctx, q: int, vids: list, edges: list):
    if not _outside_hull_small(ctx, q, vids):
        raise InsideHull(f"point {q} is not strictly outside the hull of the tree")
    X, Y, C = ctx.lx, ctx.ly, ctx.lc
    qx, qy, qc = X[q], Y[q], C[q]
    cands, blocked = [], []
    for a, b in edges:
        a_ok, b_ok = C[a] != qc, C[b] != qc
        if not (a_ok or b_ok):
            blocked.append((a, b))
            continue
        da = (X[a] - qx) ** 2 + (Y[a] - qy) ** 2
        db = (X[b] - qx) ** 2 + (Y[b] - qy) ** 2
        if a_ok and (not b_ok or da < db or (da == db and a < b)):
            cands.append((da, a, b, a))
        else:
            cands.append((db, a, b, b))
    cands.sort()
    for _, a, b, attach in cands:
        if _sees_small(ctx, q, a, b, vids, edges):
            return (a, b), attach
    for a, b in blocked:
        if _sees_small(ctx, q, a, b, vids, edges):
            raise ColorConflict(f"point {q} only sees edges with both endpoints "
                                f"of its own color")
    raise InternalError(f"point {q} sees no tree edge although it is outside the hull")


def _visible_edge(ctx: _Ctx, q: int, vids: np.ndarray, edges: np.ndarray):
    """Return ``((a, b), attach)`` for the seen edge whose attach endpoint is
    nearest to ``q``."""
    if len(edges) <= SMALL_TREE:
        return _visible_edge_small(ctx, q, vids.tolist(),
                                   [tuple(e) for e in edges.tolist()])
    if not _strictly_outside_hull(ctx, q, vids):
        raise InsideHull(f"point {q} is not strictly outside the hull of the tree")
    qx, qy, qc = ctx.x[q], ctx.y[q], ctx.c[q]
    a, b = edges[:, 0], edges[:, 1]
    ca, cb = ctx.c[a], ctx.c[b]
    da = (ctx.x[a] - qx) ** 2 + (ctx.y[a] - qy) ** 2
    db = (ctx.x[b] - qx) ** 2 + (ctx.y[b] - qy) ** 2
    a_ok, b_ok = ca != qc, cb != qc
    use_a = a_ok & (~b_ok | (da < db) | ((da == db) & (a < b)))
    usable = a_ok | b_ok
    attach = np.where(use_a, a, b)
    d2 = np.where(use_a, da, db)
    cand = np.nonzero(usable)[0]
    order = cand[np.lexsort((b[cand], a[cand], d2[cand]))]
    for k in order:
        if _sees(ctx, q, int(a[k]), int(b[k]), vids, edges):
            return (int(a[k]), int(b[k])), int(attach[k])
    for k in np.nonzero(~usable)[0]:
        if _sees(ctx, q, int(a[k]), int(b[k]), vids, edges):
            raise ColorConflict(f"point {q} only sees edges with both endpoints "
                                f"of its own color")
    raise InternalError(f"point {q} sees no tree edge although it is outside the hull")


def _tree_arrays(tree: ColoredTree):
    vids = np.array([p.id for p in tree.points], dtype=np.int64)
    edges = np.array(tree.edges, dtype=np.int64).reshape(-1, 2)
    return vids, edges


def visible_edge(q: ColoredPoint, tree: ColoredTree):
    """Edge of ``tree`` that ``q`` sees, with the endpoint to connect ``q`` to.

    ``tree`` must be connected and plane and ``q`` strictly outside the convex
    hull of its vertices. Among all seen edges the one whose attach endpoint
    is closest to ``q`` is returned (ties by edge ids).
    """
    if not tree.edges:
        raise InputError("tree has no edges")
    if any(p.id == q.id for p in tree.points):
        raise InputError(f"point id {q.id} already belongs to the tree")
    ctx = _Ctx(list(tree.points) + [q])
    vids, edges = _tree_arrays(tree)
    edge, attach = _visible_edge(ctx, q.id, vids, edges)
    return edge, ctx.points[attach]


def attach_point(q: ColoredPoint, tree: ColoredTree) -> ColoredTree:
    """``tree`` extended by one noncrossing properly-colored edge to ``q``."""
    _, attach = visible_edge(q, tree)
    return ColoredTree(list(tree.points) + [q], list(tree.edges) + [(q.id, attach.id)])


# -- merging ----------------------------------------------------------------

def _merge(ctx: _Ctx, A: MergeParty, B: MergeParty, trace=None) -> MergeParty:
    if not A.rect.shares_full_side(B.rect):
        raise GeometryViolation(f"rectangles {A.rect} and {B.rect} do not share a full side")
    rect = A.rect.union(B.rect)
    if A.kind == EMPTY:
        return MergeParty(B.kind, rect, B.points, B.edges)
    if B.kind == EMPTY:
        return MergeParty(A.kind, rect, A.points, A.edges)
    points = A.points + B.points

    if A.kind == MONO and B.kind == MONO:
        if A.color == B.color:
            return MergeParty(MONO, rect, points)
        edges = _cone_star_edges(ctx, [p.id for p in points])
        if trace is not None:
            trace.append((1, A, B, len(edges)))
        return MergeParty(TREE, rect, points, edges)

    if A.kind == TREE and B.kind == TREE:
        edges = _bridge_trees(ctx, A, B)
        if trace is not None:
            trace.append((2, A, B, 1))
        return MergeParty(TREE, rect, points, edges)

    tree, mono = (A, B) if A.kind == TREE else (B, A)
    edges = _attach_mono(ctx, tree, mono)
    if trace is not None:
        trace.append((3, tree, mono, len(mono.points)))
    return MergeParty(TREE, rect, points, edges)


def _d2_rect(x: float, y: float, r: AxisRect) -> float:
    dx = max(r.x_lo - x, 0.0, x - r.x_hi)
    dy = max(r.y_lo - y, 0.0, y - r.y_hi)
    return dx * dx + dy * dy


def _crosses_any(ctx: _Ctx, p: int, q: int, edges) -> bool:
    X, Y = ctx.lx, ctx.ly
    px, py, qx, qy = X[p], Y[p], X[q], Y[q]
    if len(edges) > SMALL_TREE:
        es = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        return bool(crossing_many(px, py, qx, qy, ctx.x[es[:, 0]], ctx.y[es[:, 0]],
                                  ctx.x[es[:, 1]], ctx.y[es[:, 1]]).any())
    return any(crossing_xy(px, py, qx, qy, X[a], Y[a], X[b], Y[b]) for a, b in edges)


def _bridge_trees(ctx: _Ctx, A: MergeParty, B: MergeParty) -> list[tuple[int, int]]:
    # q is the point closest to the other party's rectangle. Inside its own
    # rectangle that distance only depends on the coordinate normal to the
    # shared side, so every own edge stays at least as far away as q while the
    # bridge moves strictly closer: the bridge cannot cross the own tree.
    X, Y = ctx.lx, ctx.ly
    best = None
    for own, other in ((A, B), (B, A)):
        r = other.rect
        for p in own.points:
            key = (_d2_rect(X[p.id], Y[p.id], r), p.id)
            if best is None or key < best[0]:
                best = (key, own, other)
    (_, q), own, other = best
    vids = np.array([p.id for p in other.points], dtype=np.int64)
    other_edges = np.array(other.edges, dtype=np.int64).reshape(-1, 2)
    _, attach = _visible_edge(ctx, q, vids, other_edges)
    if _crosses_any(ctx, q, attach, own.edges) or _crosses_any(ctx, q, attach, other.edges):
        raise InternalError(f"bridge ({q},{attach}) crosses an existing edge")
    return A.edges + B.edges + [(min(q, attach), max(q, attach))]


def _attach_mono(ctx: _Ctx, tree: MergeParty, mono: MergeParty) -> list[tuple[int, int]]:
    X, Y = ctx.lx, ctx.ly
    r = tree.rect
    order = sorted((_d2_rect(X[p.id], Y[p.id], r), p.id) for p in mono.points)
    vids = [p.id for p in tree.points]
    edges = list(tree.edges)
    for _, q in order:
        if len(edges) <= SMALL_TREE:
            _, attach = _visible_edge_small(ctx, q, vids, edges)
        else:
            _, attach = _visible_edge(ctx, q, np.array(vids, dtype=np.int64),
                                      np.array(edges, dtype=np.int64))
        edges.append((min(q, attach), max(q, attach)))
        vids.append(q)
    return edges


def merge_parties(A: MergeParty, B: MergeParty) -> MergeParty:
    """Merge the partial solutions of two rectangles sharing a full side.

    Empty parties vanish; equal-color Mono parties stay Mono. Otherwise the
    result is a plane properly-colored tree over the union: a cone-star tree
    for two Mono parties, one bridge edge for two trees, and one attachment
    per point (nearest to the tree's rectangle first) for Tree + Mono.
    """
    pts = A.points + B.points
    if not pts:
        return _merge(None, A, B)
    return _merge(_Ctx(pts), A, B)
