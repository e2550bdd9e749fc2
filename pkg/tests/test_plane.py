from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_points, uniform
from bichroma.crossings import crossing_pairs, is_plane
from bichroma.errors import (ColorConflict, GeometryViolation, InsideHull, Monochromatic,
                             TooFewPoints)
from bichroma.geometry import (AxisRect, ColoredPoint, convex_hull, dist_point_rect,
                               find_collinear_triple, orient, point_in_convex_polygon)
from bichroma.minbst import ColoredTree, tree_problems
from bichroma.plane import (EMPTY, MONO, TREE, MergeParty, attach_point, cone_star_tree,
                            merge_parties, visible_edge)


def _open_triangle_hits_segment(q, a, b, c, d):
    """Exact test: does segment cd meet the open triangle qab? (clipping)"""
    tri = [tuple(map(Fraction, v)) for v in (q, a, b)]
    c, d = tuple(map(Fraction, c)), tuple(map(Fraction, d))
    area = (tri[1][0] - tri[0][0]) * (tri[2][1] - tri[0][1]) - \
        (tri[1][1] - tri[0][1]) * (tri[2][0] - tri[0][0])
    sign = 1 if area > 0 else -1
    lo, hi = Fraction(0), Fraction(1)
    for k in range(3):
        p0, p1 = tri[k], tri[(k + 1) % 3]
        # f(t) = cross(p1 - p0, c + t (d - c) - p0) * sign must be > 0
        ex, ey = p1[0] - p0[0], p1[1] - p0[1]
        f0 = sign * (ex * (c[1] - p0[1]) - ey * (c[0] - p0[0]))
        df = sign * (ex * (d[1] - c[1]) - ey * (d[0] - c[0]))
        if df == 0:
            if f0 <= 0:
                return False
        elif df > 0:
            lo = max(lo, -f0 / df)
        else:
            hi = min(hi, -f0 / df)
    return lo < hi


def sees_oracle(q, a, b, tree):
    if orient(q.xy, a.xy, b.xy) == 0:
        return False
    by_id = tree._index()
    for p in tree.points:
        if p.id not in (a.id, b.id):
            s = [orient(q.xy, a.xy, p.xy), orient(a.xy, b.xy, p.xy), orient(b.xy, q.xy, p.xy)]
            if s[0] == s[1] == s[2] != 0:
                return False
    for u, v in tree.edges:
        if _open_triangle_hits_segment(q.xy, a.xy, b.xy, by_id[u].xy, by_id[v].xy):
            return False
    return True


def assert_valid_plane_tree(tree, n=None):
    assert tree_problems(tree) == []
    assert crossing_pairs(tree) == []
    if n is not None:
        assert tree.n == n


# -- cone-star --------------------------------------------------------------

def test_cone_star_star():
    pts = make_points((0, 0, 0), (1, 1, 1), (2, 0.5, 1), (1.5, -1, 1), (0.3, 2, 1))
    t = cone_star_tree(pts)
    assert t.edges == [(0, 1), (0, 2), (0, 3), (0, 4)]


def test_cone_star_two_points():
    assert cone_star_tree(make_points((0, 0, 0), (1, 0, 1))).edges == [(0, 1)]


def test_cone_star_ten_random_points():
    pts = uniform(10, 77)
    assert_valid_plane_tree(cone_star_tree(pts), 10)


@given(st.integers(2, 60), st.integers(0, 10_000), st.sampled_from([2, 3, 4]))
def test_cone_star_always_plane(n, seed, colors):
    pts = uniform(n, seed, min(colors, n))
    assert_valid_plane_tree(cone_star_tree(pts), n)


def test_cone_star_errors():
    with pytest.raises(Monochromatic):
        cone_star_tree(make_points((0, 0, 0), (1, 0, 0), (0, 1, 0)))
    with pytest.raises(TooFewPoints):
        cone_star_tree(make_points((0, 0, 0)))


# -- visibility -------------------------------------------------------------

def test_visible_edge_single_edge():
    tree = ColoredTree(make_points((0, 0, 0), (1, 0, 1)), [(0, 1)])
    q = ColoredPoint(0, 2, 1, 2)
    edge, attach = visible_edge(q, tree)
    assert edge == (0, 1) and attach.id == 0


def test_visible_edge_prefers_nearer_attach_point():
    # path red a - blue b - red c; blue q below sees both edges
    pts = make_points((0, 0, 0), (1, 0.2, 1), (2, 0, 0))
    tree = ColoredTree(pts, [(0, 1), (1, 2)])
    q = ColoredPoint(0.8, -2, 1, 3)
    assert sees_oracle(q, pts[0], pts[1], tree) and sees_oracle(q, pts[1], pts[2], tree)
    # |qa| = sqrt(0.64 + 4) < |qc| = sqrt(1.44 + 4)
    edge, attach = visible_edge(q, tree)
    assert edge == (0, 1) and attach.id == 0


def test_visible_edge_inside_hull():
    pts = make_points((0, 0, 0), (3, 0, 1), (0, 3, 1))
    tree = ColoredTree(pts, [(0, 1), (0, 2)])
    with pytest.raises(InsideHull):
        visible_edge(ColoredPoint(1, 1, 1, 3), tree)
    # on the hull boundary is not strictly outside either
    with pytest.raises(InsideHull):
        visible_edge(ColoredPoint(1.5, 0, 0, 3), tree)


def test_visible_edge_color_conflict():
    # contrived: the only edge has both endpoints in q's color
    tree = ColoredTree(make_points((0, 0, 2), (1, 0, 2)), [(0, 1)])
    with pytest.raises(ColorConflict):
        visible_edge(ColoredPoint(0.5, 2, 2, 2), tree)


def test_visible_edge_third_color_uses_nearer_endpoint():
    tree = ColoredTree(make_points((0, 0, 0), (1, 0, 1)), [(0, 1)])
    edge, attach = visible_edge(ColoredPoint(0.9, 1, 2, 2), tree)
    assert attach.id == 1


def _outside_point(rng, pts, color, pid):
    cx = np.mean([p.x for p in pts])
    cy = np.mean([p.y for p in pts])
    t = rng.uniform(0, 2 * np.pi)
    r = rng.uniform(0.8, 3.0)
    return ColoredPoint(float(cx + r * np.cos(t)), float(cy + r * np.sin(t)), color, pid)


@given(st.integers(2, 30), st.integers(0, 10_000))
def test_visible_edge_postcondition(n, seed):
    pts = uniform(n, seed)
    tree = cone_star_tree(pts)
    rng = np.random.default_rng(seed)
    q = _outside_point(rng, pts, int(rng.integers(2)), n)
    try:
        edge, attach = visible_edge(q, tree)
    except InsideHull:
        assert point_in_convex_polygon(q.xy, convex_hull([p.xy for p in pts])) >= 0
        return
    by_id = tree._index()
    a, b = by_id[edge[0]], by_id[edge[1]]
    assert sees_oracle(q, a, b, tree)
    assert attach.color != q.color and attach.id in edge
    # no other seen edge offers a strictly closer attach point
    best = np.hypot(attach.x - q.x, attach.y - q.y)
    for u, v in tree.edges:
        pu, pv = by_id[u], by_id[v]
        if sees_oracle(q, pu, pv, tree):
            for p in (pu, pv):
                if p.color != q.color:
                    assert np.hypot(p.x - q.x, p.y - q.y) >= best


def test_attach_point_single_edge():
    tree = ColoredTree(make_points((0, 0, 0), (1, 0, 1)), [(0, 1)])
    out = attach_point(ColoredPoint(0.5, 1, 1, 2), tree)
    assert_valid_plane_tree(out, 3)


def test_attach_five_sorted_points():
    tree = ColoredTree(make_points((0, 0, 0), (1, 0.1, 1)), [(0, 1)])
    rect = AxisRect(0, 1.5, -0.5, 0.5)
    mono = [ColoredPoint(x, y, 1, 2 + k) for k, (x, y) in
            enumerate([(2.0, 0.3), (2.4, -0.2), (2.2, 0.9), (3.1, 0.0), (2.7, 1.4)])]
    mono.sort(key=lambda p: (dist_point_rect(p.xy, rect), p.id))
    for p in mono:
        tree = attach_point(p, tree)
        assert_valid_plane_tree(tree)
    assert tree.n == 7


# -- merging ----------------------------------------------------------------

LEFT, RIGHT = AxisRect(0, 1, 0, 1), AxisRect(1, 2, 0, 1)


def test_merge_mono_mono_minimal():
    a = MergeParty(MONO, LEFT, [ColoredPoint(0.2, 0.5, 0, 0)])
    b = MergeParty(MONO, RIGHT, [ColoredPoint(1.7, 0.5, 1, 1)])
    m = merge_parties(a, b)
    assert m.kind == TREE and m.edges == [(0, 1)] and m.rect == AxisRect(0, 2, 0, 1)


def test_merge_same_color_stays_mono():
    a = MergeParty(MONO, LEFT, [ColoredPoint(0.2, 0.5, 0, 0)])
    b = MergeParty(MONO, RIGHT, [ColoredPoint(1.7, 0.5, 0, 1)])
    m = merge_parties(a, b)
    assert m.kind == MONO and not m.edges and len(m.points) == 2


def test_merge_with_empty():
    a = MergeParty(EMPTY, LEFT)
    b = MergeParty.from_points(RIGHT, make_points((1.2, 0.2, 0), (1.8, 0.7, 1)))
    m = merge_parties(a, b)
    assert m.kind == TREE and m.edges == b.edges and m.rect == AxisRect(0, 2, 0, 1)
    assert merge_parties(MergeParty(EMPTY, LEFT), MergeParty(EMPTY, RIGHT)).kind == EMPTY


def test_merge_two_single_edge_trees():
    a = MergeParty.from_points(LEFT, [ColoredPoint(0.2, 0.2, 0, 0), ColoredPoint(0.7, 0.8, 1, 1)])
    b = MergeParty.from_points(RIGHT, [ColoredPoint(1.3, 0.6, 0, 2), ColoredPoint(1.8, 0.1, 1, 3)])
    m = merge_parties(a, b)
    assert len(m.edges) == 3
    assert_valid_plane_tree(m.tree, 4)
    # brute force: the bridge crosses neither input edge
    bridge = (set(m.edges) - set(a.edges) - set(b.edges)).pop()
    assert not crossing_pairs(ColoredTree(m.points, [bridge] + a.edges + b.edges))


def test_merge_tree_and_mono_attaches_in_distance_order():
    tree = MergeParty.from_points(LEFT, [ColoredPoint(0.3, 0.3, 0, 0), ColoredPoint(0.6, 0.7, 1, 1)])
    mono_pts = [ColoredPoint(1.9, 0.5, 1, 2), ColoredPoint(1.1, 0.4, 1, 3), ColoredPoint(1.5, 0.9, 1, 4)]
    mono = MergeParty(MONO, RIGHT, mono_pts)
    m = merge_parties(mono, tree)
    assert m.kind == TREE and len(m.edges) == 4
    assert_valid_plane_tree(m.tree, 5)
    # new edges appear in order of distance to the tree's rectangle
    added = [e for e in m.edges if e not in tree.edges]
    order = [next(v for v in e if v >= 2) for e in added]
    assert order == [3, 4, 2]
    # and every intermediate tree was plane
    for k in range(1, 4):
        ids = {0, 1} | set(order[:k])
        part = ColoredTree([p for p in m.points if p.id in ids], tree.edges + added[:k])
        assert is_plane(part)


def test_merge_requires_shared_side():
    a = MergeParty(MONO, LEFT, [ColoredPoint(0.2, 0.5, 0, 0)])
    b = MergeParty(MONO, AxisRect(1, 2, 1, 2), [ColoredPoint(1.7, 1.5, 1, 1)])
    with pytest.raises(GeometryViolation):
        merge_parties(a, b)


def _party(rect, rows, start):
    pts = [ColoredPoint(rect.x_lo + fx * (rect.x_hi - rect.x_lo),
                        rect.y_lo + fy * (rect.y_hi - rect.y_lo), c, start + k)
           for k, (fx, fy, c) in enumerate(rows)]
    return MergeParty.from_points(rect, pts)


frac = st.floats(0.01, 0.99)
rows = st.lists(st.tuples(frac, frac, st.integers(0, 2)), min_size=0, max_size=12)


@given(rows, rows, st.booleans())
def test_merge_properties(r1, r2, vertical):
    if vertical:
        ra, rb = AxisRect(0, 1, 0, 1), AxisRect(0, 1, 1, 2)
    else:
        ra, rb = LEFT, RIGHT
    a, b = _party(ra, r1, 0), _party(rb, r2, len(r1))
    pts = a.points + b.points
    if find_collinear_triple(pts) is not None or len({p.xy for p in pts}) < len(pts):
        return
    m = merge_parties(a, b)
    assert sorted(p.id for p in m.points) == list(range(len(pts)))
    if m.kind == TREE:
        assert_valid_plane_tree(m.tree, len(pts))
        if a.kind == TREE and b.kind == TREE:
            assert len(m.edges) == len(a.edges) + len(b.edges) + 1
        elif a.kind == MONO and b.kind == MONO:
            assert len(m.edges) == len(pts) - 1
        elif {a.kind, b.kind} == {TREE, MONO}:
            mono = a if a.kind == MONO else b
            tree = b if a.kind == MONO else a
            assert len(m.edges) == len(tree.edges) + len(mono.points)
    else:
        assert not m.edges
