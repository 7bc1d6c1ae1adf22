"""Vertex-presented polytopes: hulls, Minkowski sums, facets, round trips."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statepoly.polytope import (
    FacetSystem,
    VPolytope,
    extreme_points,
    facets,
    load_polytope,
    minkowski_sum,
    minkowski_sum_many,
    polytope_from_payload,
    polytope_payload,
    save_polytope,
    trivial_character_point,
    vpolytope,
)
from conftest import brute_extreme_points, brute_hull_member, rand_point


def test_vpolytope_sorts_and_dedupes():
    poly = VPolytope(2, [(1, 1), (0, 0), (1, 1), (2, 2)])
    assert poly.vertices == ((0, 0), (1, 1), (2, 2))
    assert poly.n_vertices == 3
    assert poly.dim == 2


def test_level_and_translate():
    poly = VPolytope(3, [(2, 0, 0), (0, 1, 1)])
    assert poly.level == 2
    assert VPolytope(2, [(1, 0), (0, 2)]).level is None
    shifted = poly.translate((1, 1, 1))
    assert shifted.vertices == ((1, 2, 2), (3, 1, 1))
    assert shifted.level == 5


def test_contains_uses_exact_hull():
    tri = VPolytope(2, [(0, 0), (4, 0), (0, 4)])
    assert tri.contains((1, 1))
    assert tri.contains((2, 2))  # boundary
    assert not tri.contains((3, 2))
    assert tri.contains((Fraction(1, 3), Fraction(2, 3)))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_extreme_points_agree_with_brute_force(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 4)
    pts = [rand_point(rng, dim, span=3) for _ in range(rng.randint(1, 7))]
    got = extreme_points(pts)
    assert set(got.vertices) == brute_extreme_points(pts)


def test_minkowski_sum_of_segments_is_square():
    horiz = VPolytope(2, [(0, 0), (1, 0)])
    vert = VPolytope(2, [(0, 0), (0, 1)])
    square = minkowski_sum(horiz, vert)
    assert set(square.vertices) == {(0, 0), (1, 0), (0, 1), (1, 1)}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_minkowski_sum_properties(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 3)
    p = extreme_points([rand_point(rng, dim, span=3) for _ in range(rng.randint(1, 4))])
    q = extreme_points([rand_point(rng, dim, span=3) for _ in range(rng.randint(1, 4))])
    pq = minkowski_sum(p, q)
    qp = minkowski_sum(q, p)
    assert pq.vertices == qp.vertices  # commutative
    # vertices of the sum are sums of vertices
    pairwise = {tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices}
    assert set(pq.vertices) <= pairwise
    # every pairwise sum lies in the hull
    for s in pairwise:
        assert brute_hull_member(pq.vertices, s)


def test_minkowski_sum_many_matches_iterated():
    polys = [
        VPolytope(2, [(0, 0), (1, 0)]),
        VPolytope(2, [(0, 0), (0, 1)]),
        VPolytope(2, [(0, 0), (1, 1)]),
    ]
    via_many = minkowski_sum_many(polys)
    via_fold = minkowski_sum(minkowski_sum(polys[0], polys[1]), polys[2])
    assert via_many.vertices == via_fold.vertices
    # levels add when all summands have constant level
    leveled = [VPolytope(2, [(1, 0), (0, 1)]), VPolytope(2, [(2, 0), (0, 2)])]
    assert minkowski_sum_many(leveled).level == 3


def test_trivial_character_point():
    assert trivial_character_point(11, 2, 50) == (Fraction(25, 3),) * 12
    assert trivial_character_point(4, 3, 18) == (Fraction(54, 5),) * 5
    assert trivial_character_point(1, 1, 1) == (Fraction(1, 2), Fraction(1, 2))


# ---------------------------------------------------------------------------
# facet systems


def audit_facets(system: FacetSystem, vertices):
    # every vertex satisfies every equation exactly and every facet weakly
    for v in vertices:
        for normal, offset in system.equations:
            assert sum(Fraction(n) * Fraction(x) for n, x in zip(normal, v)) == offset
        for normal, offset in system.facets:
            assert sum(Fraction(n) * Fraction(x) for n, x in zip(normal, v)) <= offset
    # each facet is tight on at least hull_dim vertices (a (d-1)-face needs d
    # affinely independent points)
    for normal, offset in system.facets:
        tight = [
            v
            for v in vertices
            if sum(Fraction(n) * Fraction(x) for n, x in zip(normal, v)) == offset
        ]
        assert len(tight) >= system.hull_dim


def test_facets_of_triangle():
    tri = VPolytope(2, [(0, 0), (2, 0), (0, 2)])
    system = facets(tri)
    assert system.hull_dim == 2
    assert len(system.facets) == 3
    assert not system.equations
    audit_facets(system, tri.vertices)
    assert system.contains((1, 1))
    assert not system.contains((2, 2))


def test_facets_of_leveled_simplex_have_equation():
    simplex = VPolytope(3, [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    system = facets(simplex)
    assert system.hull_dim == 2
    assert len(system.equations) == 1
    normal, offset = system.equations[0]
    assert abs(offset / sum(normal)) == 2 or offset == 2 * sum(normal) / len(normal)
    audit_facets(system, simplex.vertices)


def test_facets_of_point_and_segment():
    point = facets(VPolytope(2, [(1, 2)]))
    assert point.hull_dim == 0
    assert point.contains((1, 2))
    assert not point.contains((1, 3))
    seg = facets(VPolytope(2, [(0, 0), (2, 4)]))
    assert seg.hull_dim == 1
    assert seg.contains((1, 2))
    assert not seg.contains((3, 6))
    assert not seg.contains((1, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_facet_vertex_round_trip(seed):
    """vertices -> facets -> membership agrees with hull membership."""
    rng = random.Random(seed)
    dim = rng.randint(1, 3)
    poly = extreme_points([rand_point(rng, dim, span=3) for _ in range(rng.randint(1, 6))])
    system = facets(poly)
    audit_facets(system, poly.vertices)
    for _ in range(6):
        probe = rand_point(rng, dim, span=4)
        assert system.contains(probe) == brute_hull_member(poly.vertices, probe)
    # vertices of the polytope are exactly the hull points tight on >= hull_dim
    # facets (checked on the vertex set itself: each vertex must be tight on
    # at least hull_dim facet inequalities)
    for v in poly.vertices:
        tight = sum(
            1
            for normal, offset in system.facets
            if sum(Fraction(n) * Fraction(x) for n, x in zip(normal, v)) == offset
        )
        assert tight >= system.hull_dim or poly.n_vertices == 1


# ---------------------------------------------------------------------------
# serialization


def test_payload_round_trip(tmp_path):
    poly = VPolytope(3, [(1, 0, 2), (0, Fraction(3, 2), Fraction(3, 2))])
    payload = polytope_payload(poly)
    assert payload["dim"] == 3
    assert payload["level"] == 3
    back = polytope_from_payload(payload)
    assert back == poly
    path = tmp_path / "poly.json"
    save_polytope(path, poly)
    assert load_polytope(path) == poly
    # rationals serialize as strings, never floats
    text = path.read_text()
    assert "3/2" in text
    assert not any(
        isinstance(x, float)
        for row in json.loads(text)["vertices"]
        for x in row
    )


def test_payload_rejects_garbage():
    with pytest.raises(ValueError):
        polytope_from_payload({"not": "a polytope"})
    with pytest.raises(ValueError):
        polytope_from_payload({"vertices": []})


def test_vpolytope_assume_extreme_shortcut():
    pts = [(0, 0), (1, 0), (2, 0)]
    assert vpolytope(pts).vertices == ((0, 0), (2, 0))
    assert vpolytope([(0, 0), (2, 0)], assume_extreme=True).vertices == ((0, 0), (2, 0))
