import math
import warnings
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bichroma.errors import DegenerateOverlap, InputError, NotGeneralPosition
from bichroma.geometry import (AxisRect, ColoredPoint, Segment, convex_hull, crossing_many,
                               dist_point_rect, find_collinear_triple,
                               find_collinear_triple_bruteforce, orient, orient_many,
                               point_in_convex_polygon, proper_crossing,
                               require_general_position)

coord = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)


def exact_sign(p, q, r):
    px, py, qx, qy, rx, ry = map(Fraction, (*p, *q, *r))
    d = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    return (d > 0) - (d < 0)


# -- orient -----------------------------------------------------------------

def test_orient_examples():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (1, 1), (2, 2)) == 0
    assert orient((0, 0), (0, 1), (1, 0)) == -1


def test_orient_accepts_colored_points():
    a, b, c = ColoredPoint(0, 0), ColoredPoint(1, 0, 1, 1), ColoredPoint(0, 1, 0, 2)
    assert orient(a, b, c) == 1


def test_orient_near_degenerate_matches_exact():
    # naive double evaluation gets many of these wrong
    base = 0.5
    ulp = math.ulp(base)
    wrong = 0
    for i in range(32):
        for j in range(32):
            p = (base + i * ulp, base + j * ulp)
            q, r = (12.0, 12.0), (24.0, 24.0)
            naive = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
            want = exact_sign(p, q, r)
            wrong += (naive > 0) - (naive < 0) != want
            assert orient(p, q, r) == want
    assert wrong > 0


@given(point, point, point)
def test_orient_matches_rational_oracle(p, q, r):
    assert orient(p, q, r) == exact_sign(p, q, r)


@given(point, point, st.floats(0, 1), st.integers(-4, 4))
def test_orient_on_nearly_collinear_points(p, q, t, k):
    # a point on segment pq, nudged by a few ulps
    x = p[0] + t * (q[0] - p[0])
    y = p[1] + t * (q[1] - p[1])
    r = (x, y + k * math.ulp(y if y else 1.0))
    assert orient(p, q, r) == exact_sign(p, q, r)


@given(point, point, point)
def test_orient_antisymmetric(p, q, r):
    s = orient(p, q, r)
    assert orient(q, p, r) == -s
    assert orient(p, r, q) == -s
    assert orient(r, q, p) == -s
    assert orient(q, r, p) == s


@given(st.lists(st.tuples(point, point, point), min_size=1, max_size=20))
def test_orient_many_matches_scalar(triples):
    arr = np.array([[*p, *q, *r] for p, q, r in triples])
    got = orient_many(*arr.T)
    assert got.tolist() == [orient(p, q, r) for p, q, r in triples]


# -- crossings --------------------------------------------------------------

def test_proper_crossing_examples():
    assert proper_crossing(((0, 0), (1, 1)), ((0, 1), (1, 0)))
    assert not proper_crossing(((0, 0), (1, 1)), ((1, 1), (2, 0)))
    assert not proper_crossing(((0, 0), (1, 0)), ((0, 1), (1, 1)))


def test_proper_crossing_on_segments():
    a, b = ColoredPoint(0, 0, 0, 0), ColoredPoint(1, 1, 1, 1)
    c, d = ColoredPoint(0, 1, 0, 2), ColoredPoint(1, 0, 1, 3)
    assert proper_crossing(Segment(a, b), Segment(c, d))


def test_segment_rejects_zero_length():
    with pytest.raises(InputError):
        Segment(ColoredPoint(1, 1, 0, 0), ColoredPoint(1, 1, 1, 1))


def test_t_junction_is_not_a_crossing():
    # an endpoint in the interior of the other segment
    assert not proper_crossing(((0, 0), (2, 0)), ((1, 0), (1, 1)))


def test_collinear_overlap_raises():
    with pytest.raises(DegenerateOverlap):
        proper_crossing(((0, 0), (2, 0)), ((1, 0), (3, 0)))
    # touching end to end is not an overlap
    assert not proper_crossing(((0, 0), (1, 0)), ((1, 0), (2, 0)))
    assert not proper_crossing(((0, 0), (1, 0)), ((2, 0), (3, 0)))


@given(point, point, point, point)
def test_crossing_symmetric_and_convex(a, b, c, d):
    assume(len({a, b, c, d}) == 4)
    assume(all(orient(*t) != 0 for t in combinations((a, b, c, d), 3)))
    x = proper_crossing((a, b), (c, d))
    assert x == proper_crossing((c, d), (a, b)) == proper_crossing((b, a), (d, c))
    if x:
        # endpoints alternate around a convex quadrilateral a, c, b, d
        signs = {orient(a, c, b), orient(c, b, d), orient(b, d, a), orient(d, a, c)}
        assert len(signs) == 1


@given(st.lists(st.tuples(point, point), min_size=1, max_size=15), point, point)
def test_crossing_many_matches_scalar(segs, a, b):
    assume(a != b)
    assume(all(orient(a, b, c) != 0 or orient(a, b, d) != 0 for c, d in segs))
    arr = np.array([[*c, *d] for c, d in segs])
    got = crossing_many(a[0], a[1], b[0], b[1], *arr.T)
    assert got.tolist() == [proper_crossing((a, b), s) for s in segs]


# -- hull -------------------------------------------------------------------

def brute_hull_vertices(pts):
    """Points not inside or on any triangle of the others, nor between two."""
    out = set()
    for p in pts:
        others = [q for q in pts if q != p]
        covered = False
        for a, b, c in combinations(others, 3):
            s = [orient(a, b, p), orient(b, c, p), orient(c, a, p)]
            if (all(v >= 0 for v in s) or all(v <= 0 for v in s)) and orient(a, b, c) != 0:
                covered = True
                break
        if not covered:
            for a, b in combinations(others, 2):
                if orient(a, b, p) == 0 and min(a, b) <= p <= max(a, b):
                    covered = True
                    break
        if not covered:
            out.add(p)
    return out


def test_convex_hull_examples():
    assert convex_hull([(0, 0)]) == [(0, 0)]
    h = convex_hull([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
    assert h == [(0, 0), (2, 0), (2, 2), (0, 2)]


def test_convex_hull_eight_random_points_matches_bruteforce():
    rng = np.random.default_rng(8)
    for _ in range(25):
        pts = [tuple(map(float, p)) for p in rng.random((8, 2))]
        assert set(convex_hull(pts)) == brute_hull_vertices(pts)


@given(st.lists(point, min_size=1, max_size=12, unique=True))
def test_convex_hull_is_ccw_and_contains_all(pts):
    hull = convex_hull(pts)
    if len(hull) >= 3:
        for i in range(len(hull)):
            assert orient(hull[i], hull[(i + 1) % len(hull)], hull[(i + 2) % len(hull)]) > 0
    for p in pts:
        assert point_in_convex_polygon(p, hull) >= 0


def test_point_in_convex_polygon():
    sq = [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert point_in_convex_polygon((1, 1), sq) == 1
    assert point_in_convex_polygon((2, 1), sq) == 0
    assert point_in_convex_polygon((3, 1), sq) == -1
    assert point_in_convex_polygon((1, 0), [(0, 0), (2, 0)]) == 0
    assert point_in_convex_polygon((1, 1), [(0, 0), (2, 0)]) == -1


# -- rectangles -------------------------------------------------------------

R = AxisRect(1, 2, 0, 1)


def test_dist_point_rect_examples():
    assert dist_point_rect((1.5, 0.5), R) == 0
    assert dist_point_rect((0, 0.5), R) == 1
    assert dist_point_rect((0, -1), R) == pytest.approx(math.sqrt(2), rel=1e-15)


@given(point)
def test_dist_zero_iff_in_closed_rect(p):
    assert (dist_point_rect(p, R) == 0) == R.contains_closed(p)


def test_rect_half_open_membership():
    assert R.contains((1, 0))
    assert not R.contains((2, 0.5))
    assert not R.contains((1.5, 1))
    assert R.contains_closed((2, 1))


def test_rect_rejects_empty():
    with pytest.raises(InputError):
        AxisRect(1, 1, 0, 1)


def test_shares_full_side():
    left, right = AxisRect(0, 1, 0, 1), AxisRect(1, 2, 0, 1)
    top = AxisRect(0, 2, 1, 2)
    assert left.shares_full_side(right) and right.shares_full_side(left)
    assert AxisRect(0, 2, 0, 1).shares_full_side(top)
    assert not left.shares_full_side(top)
    assert not left.shares_full_side(AxisRect(1, 2, 0.5, 1.5))
    assert left.union(right) == AxisRect(0, 2, 0, 1)


# -- general position -------------------------------------------------------

def test_collinear_detection_finds_planted_triple():
    rng = np.random.default_rng(3)
    pts = [tuple(p) for p in rng.random((30, 2)).tolist()]
    a, b = pts[4], pts[17]
    pts.append((a[0] + 2 * (b[0] - a[0]), a[1] + 2 * (b[1] - a[1])))
    # may be off by rounding; confirm with the brute force scan
    assert (find_collinear_triple(pts) is None) == (find_collinear_triple_bruteforce(pts) is None)
    grid = [(float(x), float(y)) for x in range(4) for y in range(4)]
    assert find_collinear_triple(grid) is not None


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=3, max_size=12,
                unique=True))
def test_collinear_detection_matches_bruteforce(pts):
    pts = [(float(x), float(y)) for x, y in pts]
    assert (find_collinear_triple(pts) is None) == (find_collinear_triple_bruteforce(pts) is None)


def test_require_general_position():
    require_general_position([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(NotGeneralPosition):
        require_general_position([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(NotGeneralPosition):
        require_general_position([(0, 0), (0, 0), (2, 1)])


def test_large_inputs_are_sampled_with_warning():
    rng = np.random.default_rng(0)
    pts = [tuple(p) for p in rng.random((60, 2)).tolist()]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert find_collinear_triple(pts, threshold=50, sample=10) is None
    assert any("sampled" in str(w.message) for w in caught)


def test_colored_point_validation():
    with pytest.raises(InputError):
        ColoredPoint(float("nan"), 0.0)
    with pytest.raises(InputError):
        ColoredPoint(0.0, 0.0, -1)
