"""State polytopes of homogeneous ideals by oracle-driven vertex enumeration.

The degree-``m`` state vector of an ideal under a monomial order is the sum
of the exponent vectors of the degree-``m`` monomials inside the initial
ideal.  Ranging over all orders, these vectors are exactly the vertices of a
polytope; a weight vector ``w`` refined by grevlex realizes a vertex
maximizing ``w . x`` over that polytope.  That support-function oracle drives
the enumeration:

1. seed with the coordinate directions and their negatives,
2. certify the affine hull (query both signs of every hull equation until no
   new vertex appears), then
3. confirm every facet of the current hull (query its outward normal; either
   the support value matches, or a new vertex is found and the hull grows).

When every facet of the running hull is confirmed, the hull is the state
polytope.  Each distinct normalized direction costs one Groebner basis run;
an optional budget caps those runs.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .groebner import DegreeSlice, degree_slice
from .lp import LinearProgram, affine_hull, member_convex_hull, normalize_integer_vector, solve_lp
from .orders import weight_order
from .polytope import FacetSystem, IncrementalHull, VPolytope, trivial_character_point
from .rings import Ideal

StateVector = tuple[int, ...]

BUDGET_ENV_VAR = "STATEC_BUDGET"


class BudgetExhausted(RuntimeError):
    """Raised when an enumeration would exceed its Groebner-run budget."""

    def __init__(self, budget: int):
        super().__init__(f"Groebner-run budget of {budget} exhausted")
        self.budget = budget


def state_of_slice(piece: DegreeSlice) -> StateVector:
    """Sum of the exponent vectors of the slice's initial-ideal monomials."""
    total = [0] * piece.arity
    for mono in piece.in_monomials:
        for j, e in enumerate(mono):
            total[j] += e
    return tuple(total)


class StateOracle:
    """Memoized support-function oracle for one ideal and degree.

    Directions are normalized by subtracting their minimum entry and scaling
    to a content-one integer vector, so equivalent queries share a single
    Groebner run.  The shift keeps every weight row nonnegative (hence the
    refined order a genuine well-order) and does not change how equal-degree
    monomials compare; on a polytope whose points share one coordinate sum it
    shifts all support values equally, so maximizers are preserved.
    """

    def __init__(self, ideal: Ideal, m: int, budget: int | None = None):
        if m < 1:
            raise ValueError(f"degree must be positive, got {m}")
        if budget is not None and budget < 0:
            raise ValueError(f"budget must be nonnegative, got {budget}")
        self.ideal = ideal
        self.m = m
        self.budget = budget
        self.gb_runs = 0
        self.homogeneous = ideal.is_homogeneous()
        self._memo: dict[tuple[int, ...], StateVector] = {}

    @staticmethod
    def normalize_direction(weights: Sequence[int | Fraction]) -> tuple[int, ...]:
        fracs = [Fraction(w) for w in weights]
        low = min(fracs)
        return normalize_integer_vector([w - low for w in fracs])

    def state_for_direction(self, weights: Sequence[int | Fraction]) -> StateVector:
        if len(weights) != self.ideal.arity:
            raise ValueError("direction length does not match the ring arity")
        key = self.normalize_direction(weights)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if self.budget is not None and self.gb_runs >= self.budget:
            raise BudgetExhausted(self.budget)
        order = weight_order(key)
        piece = degree_slice(self.ideal, order, self.m)
        state = state_of_slice(piece)
        self.gb_runs += 1
        self._memo[key] = state
        return state

    def support(self, weights: Sequence[int | Fraction]) -> tuple[Fraction, StateVector]:
        """Maximum of ``w . x`` over the state polytope, with a maximizer."""
        vertex = self.state_for_direction(weights)
        value = sum((Fraction(w) * x for w, x in zip(weights, vertex)), Fraction(0))
        return value, vertex


def argmax_state(
    ideal: Ideal, m: int, weights: Sequence[int | Fraction], budget: int | None = None
) -> StateVector:
    """The state vector of the weight order ``weights`` refined by grevlex;
    it attains the maximum of ``weights . x`` over the state polytope."""
    return StateOracle(ideal, m, budget=budget).state_for_direction(weights)


@dataclass(frozen=True)
class StatePolytopeResult:
    """A (possibly partial) state polytope with per-vertex witness weights.

    ``witnesses[v]`` is an integer direction whose support over the polytope
    is attained at ``v``.  ``q`` is the number of degree-``m`` monomials in
    the initial ideal (the common vertex coordinate sum is ``m * q``).
    """

    polytope: VPolytope
    m: int
    status: str  # "complete" or "budget_exhausted"
    q: int | None
    query_count: int
    witnesses: Mapping[StateVector, tuple[int, ...]]
    hull_dim: int | None = None
    facet_system: FacetSystem | None = None

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def _q_from_level(polytope: VPolytope, m: int) -> int | None:
    level = polytope.level
    if level is None or m == 0:
        return None
    q = level / m
    if q.denominator != 1:
        raise ValueError(f"vertex level {level} is not a multiple of m={m}")
    return int(q)


def enumerate_state_polytope(
    ideal: Ideal,
    m: int,
    budget: int | None = None,
    oracle: StateOracle | None = None,
) -> StatePolytopeResult:
    orc = oracle if oracle is not None else StateOracle(ideal, m, budget=budget)
    arity = ideal.arity
    vertices: set[StateVector] = set()
    witnesses: dict[StateVector, tuple[int, ...]] = {}
    status = "complete"
    hull_dim: int | None = None
    system: FacetSystem | None = None

    def query(direction: Sequence[int]) -> StateVector:
        found = orc.state_for_direction(direction)
        witnesses.setdefault(found, tuple(int(d) for d in direction))
        return found

    try:
        seeds: list[tuple[int, ...]] = [(0,) * arity]
        for i in range(arity):
            seeds.append(tuple(1 if j == i else 0 for j in range(arity)))
            seeds.append(tuple(-1 if j == i else 0 for j in range(arity)))
        for w in seeds:
            vertices.add(query(w))
        while True:
            hull = affine_hull(sorted(vertices))
            hull_dim = hull.dim
            grew = False
            for normal, _offset in hull.equations:
                for sign in (1, -1):
                    found = query(tuple(sign * h for h in normal))
                    if found not in vertices:
                        vertices.add(found)
                        grew = True
            if not grew:
                break
        hull_obj = IncrementalHull(sorted(vertices))
        confirmed: set[tuple[tuple[int, ...], Fraction]] = set()
        while True:
            candidate = hull_obj.facet_system()
            pending = [f for f in candidate.facets if f not in confirmed]
            if not pending:
                system = candidate
                hull_dim = candidate.hull_dim
                break
            for normal, offset in pending:
                found = query(normal)
                value = sum(h * x for h, x in zip(normal, found))
                if value == offset:
                    confirmed.add((normal, offset))
                elif value < offset:
                    raise RuntimeError(
                        "oracle support fell below a hull facet; enumeration is inconsistent"
                    )
                if found not in vertices:
                    vertices.add(found)
                    hull_obj.add_point(found)
    except BudgetExhausted:
        status = "budget_exhausted"
    polytope = VPolytope(arity, sorted(vertices))
    return StatePolytopeResult(
        polytope=polytope,
        m=m,
        status=status,
        q=_q_from_level(polytope, m),
        query_count=orc.gb_runs,
        witnesses={v: witnesses[v] for v in polytope.vertices},
        hull_dim=hull_dim,
        facet_system=system,
    )


def state_polytope(ideal: Ideal, m: int, budget: int | None = None) -> VPolytope:
    result = enumerate_state_polytope(ideal, m, budget=budget)
    if not result.complete:
        raise BudgetExhausted(budget if budget is not None else 0)
    return result.polytope


# ---------------------------------------------------------------------------
# barycenter membership


@dataclass(frozen=True)
class SemistabilityReport:
    m: int
    q: int
    barycenter: tuple[Fraction, ...]
    member_of_hull: bool
    relative_interior: bool
    coefficients: tuple[Fraction, ...] | None  # hull coefficients when inside
    separator: tuple[int, ...] | None  # separating functional when outside


def _relative_interior_flag(polytope: VPolytope, point: Sequence[Fraction]) -> bool:
    """Whether a point already known to lie in the polytope lies in its
    relative interior: the segment from the vertex centroid (always relative
    interior) through the point must extend strictly beyond it."""
    verts = polytope.vertices
    count = len(verts)
    if count == 1:
        return True
    dim = polytope.dim
    centroid = [sum(v[j] for v in verts) / count for j in range(dim)]
    direction = [Fraction(p) - c for p, c in zip(point, centroid)]
    if not any(direction):
        return True
    # maximize t subject to: sum_i lam_i v_i - t * direction = point, sum lam = 1
    constraints = []
    for j in range(dim):
        coeffs = [v[j] for v in verts] + [-direction[j]]
        constraints.append((coeffs, "==", Fraction(point[j])))
    constraints.append(([Fraction(1)] * count + [Fraction(0)], "==", Fraction(1)))
    lp = LinearProgram(
        objective=[Fraction(0)] * count + [Fraction(1)],
        constraints=constraints,
        maximize=True,
        nonnegative=[True] * count + [False],
    )
    result = solve_lp(lp)
    if result.status == "infeasible":
        raise ValueError("point is not in the polytope")
    if result.status == "unbounded":
        return True
    assert result.objective_value is not None
    return result.objective_value > 0


def semistability_report(result: StatePolytopeResult, n: int | None = None) -> SemistabilityReport:
    """Barycenter membership for a completed state polytope.

    The barycenter is the point with all coordinates ``m*q/(n+1)``.  Reports
    hull membership and relative-interior membership with exact LP
    certificates; no stability label is attached to either flag.
    """
    if not result.complete:
        raise ValueError("state polytope enumeration is incomplete (budget exhausted)")
    polytope = result.polytope
    if n is None:
        n = polytope.dim - 1
    elif n != polytope.dim - 1:
        raise ValueError(f"n={n} does not match the polytope dimension {polytope.dim}")
    if result.q is None:
        raise ValueError("polytope has no common level; cannot form the barycenter")
    gamma = trivial_character_point(n, result.m, result.q)
    membership = member_convex_hull(polytope.vertices, gamma)
    interior = False
    if membership.inside:
        interior = _relative_interior_flag(polytope, gamma)
    return SemistabilityReport(
        m=result.m,
        q=result.q,
        barycenter=gamma,
        member_of_hull=membership.inside,
        relative_interior=interior,
        coefficients=membership.coefficients,
        separator=membership.separator,
    )


def read_budget_from_env() -> int | None:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"{BUDGET_ENV_VAR} must be nonnegative, got {value}")
    return value
