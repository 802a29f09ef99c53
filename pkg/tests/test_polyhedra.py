import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relschubert.linalg import frac, inverse, matmul, nullspace, primitive, rank, solve
from relschubert.polyhedra import (InequalitySystem, RationalCone, Row, convex_hull_vertices, feasible_point, h_to_v,
                                   implication_certificate, implied, monoid_member, prune_redundant,
                                   systems_equivalent, verify_certificate, vertex_enumeration)


def test_frac_rejects_float():
    with pytest.raises(TypeError):
        frac(0.5)
    assert frac([3, 6]) == Fraction(1, 2)


def test_linear_algebra():
    m = [[2, 1], [1, 1]]
    assert matmul(m, inverse(m)) == [[1, 0], [0, 1]]
    assert tuple(solve(m, [3, 2])) == (1, 1)
    assert rank([[1, 2, 3], [2, 4, 6]]) == 1
    ns = nullspace([[1, 1, 1]], 3)
    assert len(ns) == 2
    assert tuple(primitive([Fraction(2, 3), Fraction(4, 3)])) == (1, 2)


def test_g2_root_cone_facets():
    # simple roots of G2 in fundamental coordinates are the Cartan rows
    cone = RationalCone.from_generators([(2, -1), (-3, 2)])
    assert cone.contains((-1, 1))
    assert cone.contains((1, 0))
    assert not cone.contains((-1, 0))
    assert cone.dual().dual() == cone


def test_h_to_v_quadrant():
    lin, rays = h_to_v([(1, 0), (0, 1)], dim=2)
    assert not lin
    assert sorted(rays) == [(0, 1), (1, 0)]


def test_system_canonicalization():
    s = InequalitySystem(["x", "y"], [Row((2, 4), 0), Row((1, 2), 0), Row((0, 0), 0), Row((-3, 0), 0, "eq")])
    assert [(r.coeffs, r.kind) for r in s.rows] == [((1, 0), "eq"), ((1, 2), "ge")]


def test_prune_and_certificate():
    rows = [Row((1, 0), 0), Row((0, 1), 0), Row((1, 1), 0), Row((-1, -1), 4)]
    s = InequalitySystem(["x", "y"], rows)
    certs = {}
    p = prune_redundant(s, certificates=certs)
    assert len(p.rows) == 3
    assert systems_equivalent(p, s)
    target = Row((1, 1), 0)
    cert = implication_certificate([Row((1, 0), 0), Row((0, 1), 0)], target, 2)
    assert cert is not None and verify_certificate([Row((1, 0), 0), Row((0, 1), 0)], target, cert)


def test_affine_implication_direction():
    rows = [Row((1,), 0), Row((-1,), 2)]  # 0 <= x <= 2
    assert implied(rows, Row((-1,), 3), 1)  # x <= 3
    assert not implied(rows, Row((-1,), 1), 1)  # x <= 1 does not follow
    assert not implied(rows, Row((1,), -1), 1)  # x >= 1 does not follow


def test_vertex_enumeration_triangle():
    s = InequalitySystem(["x", "y"], [Row((1, 0), 0), Row((0, 1), 0), Row((-1, -1), 1)])
    assert vertex_enumeration(s) == [(0, 0), (0, 1), (1, 0)]
    with pytest.raises(ValueError):
        vertex_enumeration(InequalitySystem(["x", "y"], [Row((1, 0), 0), Row((0, 1), 0)]))


def test_monoid_membership():
    assert monoid_member([(2,)], (3,))[0] == "no"
    assert monoid_member([(2,), (3,)], (7,))[0] == "yes"
    # A2 simple roots in fundamental coordinates
    status, witness = monoid_member([(2, -1), (-1, 2)], (1, 1))
    assert status == "yes" and witness
    assert monoid_member([(1, 0)], (-1, 0))[0] == "no"


def brute_vertices(rows):
    """Vertices of a 2-D polygon: feasible intersections of row pairs."""
    pts = set()
    for a, b in itertools.combinations(rows, 2):
        (a1, a2), c1 = a
        (b1, b2), c2 = b
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = Fraction(-c1 * b2 + c2 * a2, det)
        y = Fraction(-a1 * c2 + b1 * c1, det)
        if all(r[0][0] * x + r[0][1] * y + r[1] >= 0 for r in rows):
            pts.add((x, y))
    return sorted(pts)


row2 = st.tuples(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), st.integers(-6, 6))


@settings(max_examples=60, deadline=None)
@given(st.lists(row2, max_size=5))
def test_vertex_enumeration_matches_brute_force(extra):
    box = [((1, 0), 5), ((-1, 0), 5), ((0, 1), 5), ((0, -1), 5)]
    rows = box + [r for r in extra if r[0] != (0, 0)]
    s = InequalitySystem(["x", "y"], [Row(c, k) for c, k in rows])
    want = brute_vertices(rows)
    hull = convex_hull_vertices(want) if want else []
    if not want:
        assert s.feasible_point() is None
        return
    assert vertex_enumeration(s) == sorted(hull)


@settings(max_examples=40, deadline=None)
@given(st.lists(row2, min_size=1, max_size=5), row2)
def test_implication_agrees_with_vertices(extra, target):
    box = [((1, 0), 5), ((-1, 0), 5), ((0, 1), 5), ((0, -1), 5)]
    rows = box + [r for r in extra if r[0] != (0, 0)]
    verts = brute_vertices(rows)
    if not verts or target[0] == (0, 0):
        return
    holds = all(target[0][0] * x + target[0][1] * y + target[1] >= 0 for x, y in verts)
    assert implied([Row(c, k) for c, k in rows], Row(target[0], target[1]), 2) == holds


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=3), st.integers(0, 40))
def test_monoid_member_one_dimensional(gens, x):
    status, witness = monoid_member([(g,) for g in gens], (x,))
    reachable = {0}
    for _ in range(x + 1):
        reachable |= {r + g for r in reachable for g in gens if r + g <= x}
    assert (status == "yes") == (x in reachable)
    if status == "yes":
        assert sum(gens[i] * k for i, k in witness.items()) == x


def test_feasible_point():
    x = feasible_point([(1, 1), (-1, 0)], [2, -5])
    assert x is not None and x[0] + x[1] >= 2 and x[0] <= 5
    assert feasible_point([(1,), (-1,)], [1, 0]) is None
