"""Exact rational polytopes in vertex form.

Vertices are tuples of ``Fraction``.  Extreme-point filtering and membership
run on the exact LP solver; facet enumeration is an incremental
beneath-beyond hull computed inside the affine hull of the input, so lower
dimensional polytopes work without perturbation.  Facets are reported as
integer inequalities ``normal . x <= offset`` (equality exactly on the
facet), together with the integer equations ``normal . x == offset`` cutting
out the affine hull.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .lp import (
    AffineHull,
    affine_hull,
    member_convex_hull,
    normalize_integer_vector,
)
from .parsing import scalar_from_json, scalar_to_json

Vector = tuple[Fraction, ...]


def _vec(values: Sequence) -> Vector:
    return tuple(Fraction(v) for v in values)


def _dot(a: Sequence[Fraction | int], b: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


# ---------------------------------------------------------------------------
# vertex-form polytopes


@dataclass(frozen=True)
class VPolytope:
    """A polytope given by its vertex list (sorted, deduplicated).

    Construct through :func:`vpolytope`, which can discard non-extreme input
    points; the raw constructor trusts its input.
    """

    dim: int
    vertices: tuple[Vector, ...]

    def __init__(self, dim: int, vertices: Iterable[Sequence]):
        pts = sorted({_vec(p) for p in vertices})
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"vertex {p} does not have {dim} coordinates")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "vertices", tuple(pts))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def level(self) -> Fraction | None:
        """Common coordinate sum of all vertices, if there is one."""
        if not self.vertices:
            return None
        sums = {sum(v, Fraction(0)) for v in self.vertices}
        return next(iter(sums)) if len(sums) == 1 else None

    def translate(self, shift: Sequence) -> "VPolytope":
        t = _vec(shift)
        if len(t) != self.dim:
            raise ValueError("translation vector has the wrong length")
        return VPolytope(self.dim, [tuple(a + b for a, b in zip(v, t)) for v in self.vertices])

    def contains(self, point: Sequence) -> bool:
        if not self.vertices:
            return False
        return member_convex_hull(self.vertices, point).inside

    def __add__(self, other: "VPolytope") -> "VPolytope":
        return minkowski_sum(self, other)

    def __iter__(self):
        return iter(self.vertices)


def extreme_points(points: Sequence[Sequence]) -> VPolytope:
    """The polytope on the points not in the hull of the remaining ones."""
    pts = sorted({_vec(p) for p in points})
    if not pts:
        raise ValueError("a polytope needs at least one point")
    dim = len(pts[0])
    if len(pts) == 1:
        return VPolytope(dim, pts)
    keep = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1 :]
        if not member_convex_hull(others, p).inside:
            keep.append(p)
    return VPolytope(dim, keep)


def vpolytope(points: Sequence[Sequence], assume_extreme: bool = False) -> VPolytope:
    pts = [_vec(p) for p in points]
    if not pts:
        raise ValueError("a polytope needs at least one vertex")
    if assume_extreme:
        return VPolytope(len(pts[0]), pts)
    return extreme_points(pts)


def minkowski_sum(p: VPolytope, q: VPolytope, filter_extreme: bool = True) -> VPolytope:
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    sums = {tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices}
    if filter_extreme:
        return extreme_points(list(sums))
    return VPolytope(p.dim, sums)


def minkowski_sum_many(polys: Sequence[VPolytope], filter_extreme: bool = True) -> VPolytope:
    if not polys:
        raise ValueError("empty Minkowski sum")
    total = polys[0]
    for q in polys[1:]:
        total = minkowski_sum(total, q, filter_extreme=filter_extreme)
    return total


def trivial_character_point(n: int, m: int, q: int) -> Vector:
    """The weight-space point with every coordinate ``m*q/(n+1)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    value = Fraction(m * q, n + 1)
    return tuple(value for _ in range(n + 1))


# ---------------------------------------------------------------------------
# exact facet enumeration (incremental beneath-beyond in the affine hull)


@dataclass(frozen=True)
class FacetSystem:
    """Equations and facet inequalities of a polytope.

    ``equations`` hold with equality on every point of the polytope;
    ``facets`` are valid inequalities ``normal . x <= offset`` tight exactly
    on a facet of the polytope inside its affine hull.
    """

    dim: int
    hull_dim: int
    equations: tuple[tuple[tuple[int, ...], Fraction], ...]
    facets: tuple[tuple[tuple[int, ...], Fraction], ...]

    def contains(self, point: Sequence) -> bool:
        p = _vec(point)
        for normal, offset in self.equations:
            if _dot(normal, p) != offset:
                return False
        return all(_dot(normal, p) <= offset for normal, offset in self.facets)


def _hyperplane_through(points: Sequence[Vector]) -> tuple[tuple[int, ...], Fraction]:
    """Integer normal and offset of the hyperplane spanned by ``k`` affinely
    independent points in ``R^k``."""
    k = len(points[0])
    if len(points) != k:
        raise ValueError("hyperplane needs exactly k points in R^k")
    base = points[0]
    rows = [[p[j] - base[j] for j in range(k)] for p in points[1:]]
    pivots: list[int] = []
    rank = 0
    for col in range(k):
        pivot_row = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [v - factor * w for v, w in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    if rank != k - 1:
        raise ValueError("degenerate facet: affinely dependent points")
    free = next(c for c in range(k) if c not in pivots)
    normal = [Fraction(0)] * k
    normal[free] = Fraction(1)
    for r, pc in enumerate(pivots):
        normal[pc] = -rows[r][free]
    h = normalize_integer_vector(normal)
    return h, _dot(h, base)


class IncrementalHull:
    """Exact convex hull that accepts points one at a time.

    The affine hull of the initial point set is fixed at construction; every
    later point must lie in it.  The boundary is kept as a set of simplicial
    pieces; coplanar pieces merge when facets are read out.
    """

    def __init__(self, points: Sequence[Sequence]):
        pts: list[Vector] = []
        seen: set[Vector] = set()
        for p in points:
            v = _vec(p)
            if v not in seen:
                seen.add(v)
                pts.append(v)
        if not pts:
            raise ValueError("a hull needs at least one point")
        self.ambient_dim = len(pts[0])
        self.hull: AffineHull = affine_hull(pts)
        self.k = self.hull.dim
        self.points: list[Vector] = []
        self.proj: list[Vector] = []
        self._index: dict[Vector, int] = {}
        self.pieces: dict[tuple[int, ...], tuple[tuple[int, ...], Fraction]] = {}
        self._ref: Vector | None = None
        if self.k == 0:
            self._register(pts[0])
            return
        simplex = self._independent_subset(pts)
        for p in simplex:
            self._register(p)
        k = self.k
        self._ref = tuple(
            sum((self.proj[i][j] for i in range(k + 1)), Fraction(0)) / (k + 1) for j in range(k)
        )
        for piece in combinations(range(k + 1), k):
            self._add_piece(piece)
        for p in pts:
            self.add_point(p)

    def _independent_subset(self, pts: Sequence[Vector]) -> list[Vector]:
        chosen = [pts[0]]
        base = self.hull.project(pts[0])
        rows: list[list[Fraction]] = []
        pivots: list[int] = []
        for p in pts[1:]:
            if len(chosen) == self.k + 1:
                break
            vec = [a - b for a, b in zip(self.hull.project(p), base)]
            for row, piv in zip(rows, pivots):
                if vec[piv]:
                    factor = vec[piv]
                    vec = [v - factor * w for v, w in zip(vec, row)]
            piv = next((j for j, v in enumerate(vec) if v), None)
            if piv is None:
                continue
            inv = 1 / vec[piv]
            vec = [v * inv for v in vec]
            for i, row in enumerate(rows):
                if row[piv]:
                    factor = row[piv]
                    rows[i] = [v - factor * w for v, w in zip(row, vec)]
            rows.append(vec)
            pivots.append(piv)
            chosen.append(p)
        if len(chosen) != self.k + 1:
            raise ValueError("points do not span their affine hull")  # unreachable
        return chosen

    def _register(self, ambient: Vector) -> int:
        proj = self.hull.project(ambient)
        idx = len(self.points)
        self.points.append(ambient)
        self.proj.append(proj)
        self._index[proj] = idx
        return idx

    def _add_piece(self, indices: tuple[int, ...]) -> None:
        normal, offset = _hyperplane_through([self.proj[i] for i in indices])
        side = _dot(normal, self._ref)
        if side > offset:
            normal = tuple(-h for h in normal)
            offset = -offset
        elif side == offset:
            raise ValueError("interior reference point lies on a facet")  # unreachable
        self.pieces[tuple(sorted(indices))] = (normal, offset)

    def add_point(self, point: Sequence) -> bool:
        """Insert a point; returns True when it enlarges the hull."""
        ambient = _vec(point)
        if len(ambient) != self.ambient_dim:
            raise ValueError("point has the wrong dimension")
        if not self.hull.contains(ambient):
            raise ValueError(f"point {ambient} is outside the fixed affine hull")
        proj = self.hull.project(ambient)
        if proj in self._index:
            return False
        if self.k == 0:
            return False  # equal projections in a 0-dimensional hull: duplicate
        visible = [
            indices
            for indices, (normal, offset) in self.pieces.items()
            if _dot(normal, proj) > offset
        ]
        if not visible:
            self._register(ambient)
            return False
        ridge_count: dict[tuple[int, ...], int] = {}
        for indices in visible:
            for ridge in combinations(indices, self.k - 1):
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        if any(count > 2 for count in ridge_count.values()):
            raise RuntimeError("boundary triangulation invariant broken")  # unreachable
        horizon = [ridge for ridge, count in ridge_count.items() if count == 1]
        for indices in visible:
            del self.pieces[indices]
        new_index = self._register(ambient)
        for ridge in horizon:
            self._add_piece(ridge + (new_index,))
        return True

    def facet_system(self) -> FacetSystem:
        planes = sorted({plane for plane in self.pieces.values()})
        lifted = []
        for normal, offset in planes:
            amb = self.hull.lift_normal(normal)
            amb_offset = offset + _dot(amb, self.hull.base_point)
            h = normalize_integer_vector(amb)
            # lift_normal keeps the entries, so the content is already 1
            lifted.append((h, amb_offset))
        return FacetSystem(
            dim=self.ambient_dim,
            hull_dim=self.k,
            equations=self.hull.equations,
            facets=tuple(sorted(lifted)),
        )


def facets(source: VPolytope | Sequence[Sequence]) -> FacetSystem:
    if isinstance(source, VPolytope):
        points: Sequence[Vector] = source.vertices
    else:
        points = sorted({_vec(p) for p in source})
    return IncrementalHull(points).facet_system()


# ---------------------------------------------------------------------------
# JSON form


def polytope_payload(poly: VPolytope) -> dict:
    level = poly.level
    return {
        "dim": poly.dim,
        "level": None if level is None else scalar_to_json(level),
        "vertices": [[scalar_to_json(x) for x in v] for v in poly.vertices],
    }


def polytope_from_payload(payload: dict) -> VPolytope:
    if not isinstance(payload, dict) or "vertices" not in payload:
        raise ValueError("polytope payload needs a 'vertices' list")
    vertices = [[scalar_from_json(x) for x in row] for row in payload["vertices"]]
    if not vertices:
        raise ValueError("polytope payload has no vertices")
    dim = payload.get("dim", len(vertices[0]))
    return VPolytope(int(dim), vertices)


def save_polytope(path: str | Path, poly: VPolytope) -> None:
    Path(path).write_text(json.dumps(polytope_payload(poly), indent=2, sort_keys=True) + "\n")


def load_polytope(path: str | Path) -> VPolytope:
    return polytope_from_payload(json.loads(Path(path).read_text()))
