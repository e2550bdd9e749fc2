import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_points, uniform
from bichroma.errors import Monochromatic, TooFewPoints
from bichroma.minbst import (ColoredTree, closest_pair_bichromatic, min_colored_spanning_tree,
                             tree_length, tree_problems)
from bichroma.oracles import count_spanning_trees, enumerate_min_spanning_tree


def test_two_points():
    t = min_colored_spanning_tree(make_points((0, 0, 0), (1, 0, 1)))
    assert t.edges == [(0, 1)]
    assert t.total_length == 1.0


def test_four_point_example(four_point):
    # 4-cycle of bichromatic edges with lengths 10, 1, 1, 10: drop one long edge
    assert count_spanning_trees(four_point) == 4
    t = min_colored_spanning_tree(four_point)
    assert t.total_length == 12.0
    # both long edges tie; (length, min id, max id) keeps (0, 2)
    assert t.edges == [(0, 2), (0, 3), (1, 2)]


def test_seven_point_matches_enumeration():
    pts = uniform(7, 2024)
    want = enumerate_min_spanning_tree(pts).total_length
    got = min_colored_spanning_tree(pts).total_length
    assert got == pytest.approx(want, rel=1e-12)
    assert got == pytest.approx(2.0431737058968658, rel=1e-12)


@given(st.integers(2, 8), st.integers(0, 10_000), st.sampled_from([2, 3]))
def test_matches_enumeration(n, seed, colors):
    pts = uniform(n, seed, min(colors, n))
    want = enumerate_min_spanning_tree(pts).total_length
    assert min_colored_spanning_tree(pts).total_length == pytest.approx(want, rel=1e-12)


@given(st.integers(2, 40), st.integers(0, 10_000), st.sampled_from([2, 3, 4]))
def test_tree_invariants_and_cut_optimality(n, seed, colors):
    pts = uniform(n, seed, min(colors, n))
    t = min_colored_spanning_tree(pts)
    assert tree_problems(t) == []
    by_id = {p.id: p for p in pts}
    adj = t.adjacency()

    def side(a, b):
        seen, stack = {a}, [a]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen and {u, v} != {a, b}:
                    seen.add(v)
                    stack.append(v)
        return seen

    for a, b in t.edges:
        comp = side(a, b)
        d_ab = math.dist(by_id[a].xy, by_id[b].xy)
        for u in comp:
            for p in pts:
                if p.id not in comp and p.color != by_id[u].color:
                    assert d_ab <= math.dist(by_id[u].xy, p.xy) + 1e-15


def test_closest_pair_examples():
    pts = make_points((0, 0, 0), (3, 0, 1), (1, 0, 1))
    p, q = closest_pair_bichromatic(pts)
    assert (p.id, q.id) == (0, 2)
    pts = make_points((0, 0, 0), (1, 0, 1), (0.5, 0.01, 0))
    p, q = closest_pair_bichromatic(pts)
    # |(0.5,0.01)-(1,0)| = 0.50010 < 1
    assert (p.id, q.id) == (2, 1)
    pts = make_points((0, 0, 1), (5, 5, 0))
    p, q = closest_pair_bichromatic(pts)
    assert (p.id, q.id) == (1, 0)


def test_closest_pair_ties_use_ids():
    pts = make_points((0, 0, 0), (1, 0, 1), (-1, 0, 1))
    p, q = closest_pair_bichromatic(pts)
    assert (p.id, q.id) == (0, 1)


@given(st.integers(2, 50), st.integers(0, 10_000))
def test_closest_pair_is_a_tree_edge(n, seed):
    pts = uniform(n, seed)
    p, q = closest_pair_bichromatic(pts)
    assert (min(p.id, q.id), max(p.id, q.id)) in min_colored_spanning_tree(pts).edges


def test_tree_length():
    pts = make_points((0, 0, 0))
    assert tree_length(ColoredTree(pts, [])) == 0
    pts = make_points((0, 0, 0), (1, 0, 1))
    assert tree_length(ColoredTree(pts, [(0, 1)])) == 1


def test_tree_length_four_point(four_point):
    t = ColoredTree(four_point, [(0, 3), (1, 2), (1, 3)])
    assert tree_length(t) == 12.0


def test_errors():
    with pytest.raises(TooFewPoints):
        min_colored_spanning_tree(make_points((0, 0, 0)))
    with pytest.raises(Monochromatic):
        min_colored_spanning_tree(make_points((0, 0, 1), (1, 0, 1)))
    with pytest.raises(Monochromatic):
        closest_pair_bichromatic(make_points((0, 0, 1), (1, 0, 1)))


def test_tree_problems_detects_violations():
    pts = make_points((0, 0, 0), (1, 0, 1), (2, 1, 0))
    assert tree_problems(ColoredTree(pts, [(0, 1), (1, 2)])) == []
    assert any("monochromatic" in s for s in tree_problems(ColoredTree(pts, [(0, 1), (0, 2)])))
    assert any("edges" in s for s in tree_problems(ColoredTree(pts, [(0, 1)])))
    bad = ColoredTree(pts, [(0, 1), (1, 2)], total_length=5.0)
    assert any("length" in s for s in tree_problems(bad))


def test_ties_are_deterministic():
    # cocircular: all bichromatic distances between the square's corners tie
    pts = make_points((0, 0, 0), (1, 0, 1), (1, 1, 0), (0, 1, 1))
    first = min_colored_spanning_tree(pts).edges
    for _ in range(3):
        assert min_colored_spanning_tree(list(reversed(pts))).edges == first
    assert first == [(0, 1), (0, 3), (1, 2)]
