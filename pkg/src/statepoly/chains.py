"""Chain decomposition of state polytopes.

A chain setup splits the coordinates ``0..n`` into consecutive blocks that
meet only in shared junction coordinates ``n_1 < ... < n_{l-1}``.  Each
component lives on one block (its defining forms use only that block's
variables and vanish at the junction unit points it shares).  For such a
configuration the degree-``m`` state polytope of the assembled ideal is a
translate of the Minkowski sum of the component block polytopes:

* ``tau_vector`` gives the translation, the exponent sum of the degree-``m``
  monomials that mix variables from different sides of a junction;
* ``decomposed_state_polytope`` builds the sum without ever running a basis
  computation at ambient arity, certifying along the way that every
  combination of component vertices is an extreme point of the sum;
* ``barycenter_decompose`` splits an ambient point into block summands with
  prescribed coordinate-sum levels, which turns a membership question about
  the big sum into one membership question per component
  (``semistability_via_components``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .groebner import (
    MonomialIdeal,
    degree_slice,
    intersect_ideals,
    monomial_slice,
)
from .lp import (
    HullMembership,
    LinearProgram,
    member_convex_hull,
    normalize_integer_vector,
    solve_lp,
)
from .orders import merge_chain_weights, weight_order
from .polytope import VPolytope, trivial_character_point
from .rings import (
    Ideal,
    Monomial,
    Polynomial,
    project_polynomial,
    unit_monomial,
)
from .state import (
    BudgetExhausted,
    StatePolytopeResult,
    enumerate_state_polytope,
    state_of_slice,
)

Vector = tuple[Fraction, ...]


class ExtremalityError(RuntimeError):
    """Raised when a claimed vertex of a component polytope admits no strict
    maximizing weight, or when two vertex combinations collide in the sum.

    Either condition means the input data does not describe polytopes whose
    sum has one extreme point per combination, so the decomposition refuses
    to continue rather than silently dropping points.
    """


def _vec(values: Sequence) -> Vector:
    return tuple(Fraction(v) for v in values)


# ---------------------------------------------------------------------------
# block layout


@dataclass(frozen=True)
class BlockSpec:
    """Consecutive coordinate blocks ``[n_0..n_1], [n_1..n_2], ...`` with
    ``n_0 = 0``; adjacent blocks share exactly the junction coordinate."""

    boundaries: tuple[int, ...]

    def __init__(self, boundaries: Iterable[int]):
        bounds = tuple(int(b) for b in boundaries)
        problems = structural_violations(bounds)
        if problems:
            raise ValueError("; ".join(problems))
        object.__setattr__(self, "boundaries", bounds)

    @property
    def n(self) -> int:
        """Largest coordinate index."""
        return self.boundaries[-1]

    @property
    def arity(self) -> int:
        return self.n + 1

    @property
    def n_components(self) -> int:
        return len(self.boundaries) - 1

    @property
    def junctions(self) -> tuple[int, ...]:
        """Coordinates shared by two adjacent blocks."""
        return self.boundaries[1:-1]

    def block_start(self, i: int) -> int:
        return self.boundaries[i]

    def block_end(self, i: int) -> int:
        return self.boundaries[i + 1]

    def block_coords(self, i: int) -> range:
        """Coordinates of block ``i`` (0-based), junction ends included."""
        return range(self.boundaries[i], self.boundaries[i + 1] + 1)

    def block_width(self, i: int) -> int:
        return self.boundaries[i + 1] - self.boundaries[i] + 1


def structural_violations(boundaries: Sequence[int]) -> list[str]:
    """Problems that keep a boundary list from describing a chain of blocks."""
    problems: list[str] = []
    if len(boundaries) < 2:
        problems.append("need at least two block boundaries")
        return problems
    if boundaries[0] != 0:
        problems.append(f"first block boundary is {boundaries[0]}, expected 0")
    for a, b in zip(boundaries, boundaries[1:]):
        if b <= a:
            problems.append(f"block boundaries not strictly increasing: {a} then {b}")
    return problems


@dataclass(frozen=True)
class ChainInput:
    """Block boundaries plus one component per block.

    A component is either an :class:`~statepoly.rings.Ideal` at ambient arity
    whose generators use only the block's variables, or an already-known
    block polytope (a :class:`~statepoly.polytope.VPolytope` whose dimension
    is the block width, or the ambient arity with zeros outside the block).
    """

    blocks: tuple[int, ...]
    components: tuple[Ideal | VPolytope, ...]

    def __init__(
        self,
        blocks: Iterable[int],
        components: Iterable[Ideal | VPolytope],
    ):
        object.__setattr__(self, "blocks", tuple(int(b) for b in blocks))
        object.__setattr__(self, "components", tuple(components))

    def block_spec(self) -> BlockSpec:
        return BlockSpec(self.blocks)


def _coerce_blocks(blocks: BlockSpec | Sequence[int]) -> BlockSpec:
    if isinstance(blocks, BlockSpec):
        return blocks
    return BlockSpec(blocks)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ChainValidation:
    """Outcome of checking a chain input: hard violations and soft warnings."""

    violations: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_chain(chain: ChainInput) -> ChainValidation:
    """Check block layout, component support, and junction vanishing.

    Violations block further processing; inhomogeneous generators are only
    warned about (the enumeration itself rejects them when it matters).
    """
    violations = list(structural_violations(chain.blocks))
    warnings: list[str] = []
    if violations:
        return ChainValidation(tuple(violations), tuple(warnings))

    spec = BlockSpec(chain.blocks)
    expected = spec.n_components
    if len(chain.components) != expected:
        violations.append(
            f"chain has {expected} blocks but {len(chain.components)} components"
        )
        return ChainValidation(tuple(violations), tuple(warnings))

    for i, comp in enumerate(chain.components):
        label = f"component {i + 1}"
        coords = set(spec.block_coords(i))
        if isinstance(comp, Ideal):
            if comp.arity != spec.arity:
                violations.append(
                    f"{label}: ideal arity {comp.arity} does not match "
                    f"ambient arity {spec.arity}"
                )
                continue
            stray = sorted(comp.support_variables() - coords)
            if stray:
                violations.append(
                    f"{label}: generators use coordinates {stray} outside "
                    f"block {sorted(coords)}"
                )
            if not comp.is_homogeneous():
                warnings.append(f"{label}: generators are not homogeneous")
            shared = []
            if i > 0:
                shared.append(spec.block_start(i))
            if i < expected - 1:
                shared.append(spec.block_end(i))
            for j in shared:
                for g in comp.generators:
                    if g.evaluate_unit(j) != 0:
                        violations.append(
                            f"{label}: generator does not vanish at the unit "
                            f"point of junction coordinate {j}"
                        )
                        break
        elif isinstance(comp, VPolytope):
            width = spec.block_width(i)
            if comp.dim == spec.arity:
                outside = [j for j in range(spec.arity) if j not in coords]
                for v in comp.vertices:
                    if any(v[j] != 0 for j in outside):
                        violations.append(
                            f"{label}: polytope vertex has support outside "
                            f"block {sorted(coords)}"
                        )
                        break
            elif comp.dim != width:
                violations.append(
                    f"{label}: polytope dimension {comp.dim} is neither the "
                    f"block width {width} nor the ambient arity {spec.arity}"
                )
                continue
            if comp.level is None:
                violations.append(
                    f"{label}: polytope vertices do not share a common "
                    f"coordinate sum"
                )
        else:
            violations.append(
                f"{label}: expected an ideal or a polytope, got {type(comp).__name__}"
            )
    return ChainValidation(tuple(violations), tuple(warnings))


def _require_valid(chain: ChainInput) -> BlockSpec:
    report = validate_chain(chain)
    if not report.ok:
        raise ValueError("invalid chain input: " + "; ".join(report.violations))
    return chain.block_spec()


# ---------------------------------------------------------------------------
# mixed monomials and the translation vector


@dataclass(frozen=True)
class MixedIdealSet:
    """One monomial ideal per junction: products of a variable strictly left
    of the junction with a variable strictly right of it."""

    blocks: BlockSpec
    ideals: tuple[MonomialIdeal, ...]

    def union(self) -> MonomialIdeal:
        out = self.ideals[0]
        for mi in self.ideals[1:]:
            out = out | mi
        return out


def mixed_ideals(blocks: BlockSpec | Sequence[int]) -> MixedIdealSet:
    """The junction product ideals of a chain with at least two blocks."""
    spec = _coerce_blocks(blocks)
    if spec.n_components < 2:
        raise ValueError("mixed ideals need at least two blocks")
    arity = spec.arity
    ideals = []
    for junction in spec.junctions:
        gens = [
            (unit_monomial(arity, a), unit_monomial(arity, b))
            for a in range(junction)
            for b in range(junction + 1, spec.n + 1)
        ]
        products = [tuple(x + y for x, y in zip(a, b)) for a, b in gens]
        ideals.append(MonomialIdeal(arity, products))
    return MixedIdealSet(spec, tuple(ideals))


@dataclass(frozen=True)
class TauVector:
    """Exponent sum of the degree-``m`` monomials mixing across a junction
    (each monomial counted once even when it mixes across several)."""

    tau: tuple[int, ...]
    m: int
    mixed_monomial_count: int


def tau_vector(blocks: BlockSpec | Sequence[int], m: int) -> TauVector:
    """Translation between the Minkowski sum of block polytopes and the state
    polytope of the assembled chain.  A single block gives the zero vector."""
    spec = _coerce_blocks(blocks)
    if m < 1:
        raise ValueError(f"degree m must be >= 1, got {m}")
    if spec.n_components < 2:
        return TauVector((0,) * spec.arity, m, 0)
    union = mixed_ideals(spec).union()
    piece = monomial_slice(union, m)
    tau = state_of_slice(piece)
    return TauVector(tau, m, len(piece.in_monomials))


# ---------------------------------------------------------------------------
# assembling the ambient ideal


def assemble_ideal(chain: ChainInput) -> Ideal:
    """Intersect the embedded component ideals into one ambient ideal.

    Each component contributes its generators together with the ambient
    variables outside its block (the component sits in the coordinate
    subspace of its block).  Requires ideal components throughout.
    """
    spec = _require_valid(chain)
    embedded: list[Ideal] = []
    for i, comp in enumerate(chain.components):
        if not isinstance(comp, Ideal):
            raise ValueError(
                f"component {i + 1} is polytope data; assembling an ambient "
                f"ideal needs ideal components"
            )
        coords = set(spec.block_coords(i))
        outside = [
            Polynomial.variable(spec.arity, j)
            for j in range(spec.arity)
            if j not in coords
        ]
        embedded.append(Ideal(spec.arity, tuple(comp.generators) + tuple(outside)))
    result = embedded[0]
    for nxt in embedded[1:]:
        result = intersect_ideals(result, nxt)
    return result


def component_block_ideal(chain: ChainInput, i: int) -> Ideal:
    """Component ``i`` rewritten in the small ring of its block coordinates."""
    spec = chain.block_spec()
    comp = chain.components[i]
    if not isinstance(comp, Ideal):
        raise ValueError(f"component {i + 1} is polytope data, not an ideal")
    coords = list(spec.block_coords(i))
    return Ideal(
        len(coords),
        tuple(project_polynomial(g, coords) for g in comp.generators),
    )


# ---------------------------------------------------------------------------
# component polytopes and extremality certificates


def _component_block_polytope(
    chain: ChainInput,
    spec: BlockSpec,
    i: int,
    m: int,
    budget: int | None,
) -> tuple[VPolytope, int]:
    """Block polytope of component ``i`` plus the number of basis runs spent.

    Ideal components are enumerated in the block ring; polytope components
    are restricted to block coordinates when given at ambient arity.
    """
    comp = chain.components[i]
    if isinstance(comp, Ideal):
        result = enumerate_state_polytope(component_block_ideal(chain, i), m, budget)
        if not result.complete:
            raise BudgetExhausted(budget if budget is not None else 0)
        return result.polytope, result.query_count
    coords = list(spec.block_coords(i))
    if comp.dim == spec.arity:
        restricted = VPolytope(
            len(coords), [tuple(v[j] for j in coords) for v in comp.vertices]
        )
        return restricted, 0
    return comp, 0


def _component_level_count(poly: VPolytope, m: int, i: int) -> int:
    """The common coordinate sum of the block polytope divided by ``m``
    (the number of standard degree-``m`` monomials of the component)."""
    level = poly.level
    if level is None:
        raise ValueError(f"component {i + 1}: polytope has no common coordinate sum")
    q = Fraction(level, m)
    if q.denominator != 1 or q < 0:
        raise ValueError(
            f"component {i + 1}: coordinate sum {level} is not m = {m} times "
            f"a nonnegative integer"
        )
    return int(q)


def extremality_witness(poly: VPolytope, vertex: Sequence) -> tuple[int, ...]:
    """An integer weight vector at which ``vertex`` is the unique maximizer
    over the polytope's vertices.  Raises :class:`ExtremalityError` when no
    such vector exists (the point is not extreme)."""
    target = _vec(vertex)
    others = [v for v in poly.vertices if v != target]
    if target not in poly.vertices:
        raise ValueError("witness requested for a point that is not a listed vertex")
    if not others:
        return (0,) * poly.dim
    constraints = [
        (tuple(t - o for t, o in zip(target, other)), ">=", Fraction(1))
        for other in others
    ]
    program = LinearProgram(
        objective=(0,) * poly.dim,
        constraints=constraints,
        maximize=True,
        nonnegative=[False] * poly.dim,
    )
    result = solve_lp(program)
    if result.status != "optimal":
        raise ExtremalityError(
            f"extremality violated: no weight vector separates vertex "
            f"{tuple(target)} strictly from the other vertices"
        )
    return normalize_integer_vector(result.point)


# ---------------------------------------------------------------------------
# the decomposed state polytope


def decomposed_state_polytope(
    chain: ChainInput, m: int, budget: int | None = None
) -> StatePolytopeResult:
    """State polytope of the assembled chain, built from component polytopes.

    The vertices are ``tau + sum of one vertex per component`` over all
    combinations; a strict maximizing weight is certified per component
    vertex and spliced across junctions into an ambient witness per sum, so
    every combination is a genuine extreme point.  Block q-values plus the
    mixed-monomial count give the ambient q-value.
    """
    spec = _require_valid(chain)
    if m < 1:
        raise ValueError(f"degree m must be >= 1, got {m}")
    tau = tau_vector(spec, m)
    queries = 0
    vertex_lists: list[tuple[Vector, ...]] = []
    witness_lists: list[dict[Vector, tuple[int, ...]]] = []
    q_total = tau.mixed_monomial_count
    for i in range(spec.n_components):
        poly, spent = _component_block_polytope(chain, spec, i, m, budget)
        queries += spent
        q_total += _component_level_count(poly, m, i)
        vertex_lists.append(poly.vertices)
        witness_lists.append({v: extremality_witness(poly, v) for v in poly.vertices})

    arity = spec.arity
    starts = [spec.block_start(i) for i in range(spec.n_components)]
    sums: list[Vector] = []
    witnesses: dict[Vector, tuple[int, ...]] = {}
    for combo in itertools.product(*vertex_lists):
        total = [Fraction(t) for t in tau.tau]
        for start, part in zip(starts, combo):
            for j, value in enumerate(part):
                total[start + j] += value
        key = tuple(total)
        sums.append(key)
        witnesses[key] = merge_chain_weights(
            [witness_lists[i][part] for i, part in enumerate(combo)]
        )

    expected = 1
    for vl in vertex_lists:
        expected *= len(vl)
    polytope = VPolytope(arity, sums)
    if polytope.n_vertices != expected:
        raise ExtremalityError(
            f"extremality violated: {expected} vertex combinations produced "
            f"only {polytope.n_vertices} distinct sums"
        )
    return StatePolytopeResult(
        polytope=polytope,
        m=m,
        status="complete",
        q=q_total,
        query_count=queries,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# barycenter decomposition and semistability


def barycenter_decompose(
    point: Sequence,
    blocks: BlockSpec | Sequence[int],
    levels: Sequence,
) -> tuple[Vector, ...]:
    """Split an ambient point into one summand per block, each supported on
    its block's coordinates with the prescribed coordinate sum.

    Working left to right, each summand copies the remaining point on the
    block's interior coordinates and closes its level on the right junction;
    this is the only possible decomposition.  The coordinate sums must add
    up to the point's total, otherwise no decomposition exists.
    """
    spec = _coerce_blocks(blocks)
    target = _vec(point)
    if len(target) != spec.arity:
        raise ValueError(
            f"point has {len(target)} coordinates, expected {spec.arity}"
        )
    sums = [Fraction(v) for v in levels]
    if len(sums) != spec.n_components:
        raise ValueError(
            f"got {len(sums)} levels for {spec.n_components} blocks"
        )
    if sum(target) != sum(sums):
        raise ValueError(
            f"coordinate sum {sum(target)} does not match the total level "
            f"{sum(sums)}; no decomposition exists"
        )
    residual = list(target)
    out: list[Vector] = []
    for i in range(spec.n_components):
        start, end = spec.block_start(i), spec.block_end(i)
        summand = [Fraction(0)] * spec.arity
        partial = Fraction(0)
        for j in range(start, end):
            summand[j] = residual[j]
            partial += residual[j]
        summand[end] = sums[i] - partial
        for j in range(start, end + 1):
            residual[j] -= summand[j]
        out.append(tuple(summand))
    if any(r != 0 for r in residual):
        raise ValueError("decomposition left a nonzero residual")
    return tuple(out)


@dataclass(frozen=True)
class ComponentMembership:
    """Whether one block summand lies in its component's block polytope."""

    index: int
    summand: Vector
    inside: bool
    coefficients: tuple[Fraction, ...] | None
    separator: tuple[int, ...] | None


@dataclass(frozen=True)
class ChainSemistabilityReport:
    """Barycenter membership for a chain, decided one component at a time.

    ``member_of_hull`` is true exactly when every block summand of
    ``barycenter - tau`` lies in the corresponding component polytope.
    """

    m: int
    q: int
    tau: tuple[int, ...]
    barycenter: Vector
    target: Vector
    levels: tuple[Fraction, ...]
    summands: tuple[Vector, ...]
    components: tuple[ComponentMembership, ...]
    member_of_hull: bool


def semistability_via_components(
    chain: ChainInput, m: int, budget: int | None = None
) -> ChainSemistabilityReport:
    """Decide whether the chain's barycenter lies in its state polytope
    without forming the Minkowski sum: decompose ``barycenter - tau`` into
    block summands and test each against its component polytope."""
    spec = _require_valid(chain)
    if m < 1:
        raise ValueError(f"degree m must be >= 1, got {m}")
    tau = tau_vector(spec, m)
    polys: list[VPolytope] = []
    q_total = tau.mixed_monomial_count
    for i in range(spec.n_components):
        poly, _ = _component_block_polytope(chain, spec, i, m, budget)
        q_total += _component_level_count(poly, m, i)
        polys.append(poly)
    levels = tuple(poly.level for poly in polys)
    gamma = trivial_character_point(spec.n, m, q_total)
    target = tuple(g - t for g, t in zip(gamma, tau.tau))
    summands = barycenter_decompose(target, spec, levels)
    memberships: list[ComponentMembership] = []
    for i, (poly, summand) in enumerate(zip(polys, summands)):
        coords = list(spec.block_coords(i))
        restricted = tuple(summand[j] for j in coords)
        hull: HullMembership = member_convex_hull(poly.vertices, restricted)
        memberships.append(
            ComponentMembership(
                index=i,
                summand=summand,
                inside=hull.inside,
                coefficients=hull.coefficients,
                separator=hull.separator,
            )
        )
    return ChainSemistabilityReport(
        m=m,
        q=q_total,
        tau=tau.tau,
        barycenter=gamma,
        target=target,
        levels=levels,
        summands=summands,
        components=tuple(memberships),
        member_of_hull=all(c.inside for c in memberships),
    )


# ---------------------------------------------------------------------------
# slice bookkeeping


@dataclass(frozen=True)
class SlicePartitionReport:
    """Comparison of the assembled ideal's degree-``m`` slice with the mixed
    monomials plus the embedded component slices.

    When the chain behaves as designed the three families partition the
    ambient slice and no junction power ``x_{n_i}^m`` appears anywhere.
    """

    m: int
    merged_weights: tuple[int, ...]
    ambient_in_slice: tuple[Monomial, ...]
    mixed_monomials: tuple[Monomial, ...]
    embedded_slices: tuple[tuple[Monomial, ...], ...]
    junction_powers: tuple[Monomial, ...]
    missing: tuple[Monomial, ...]
    extra: tuple[Monomial, ...]
    overlaps: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.overlaps)


def initial_slice_partition(
    chain: ChainInput,
    m: int,
    block_weights: Sequence[Sequence[int]],
) -> SlicePartitionReport:
    """Compare the initial-ideal slice of the assembled chain (under spliced
    block weights) with the mixed monomials and the embedded block slices."""
    spec = _require_valid(chain)
    if m < 1:
        raise ValueError(f"degree m must be >= 1, got {m}")
    if len(block_weights) != spec.n_components:
        raise ValueError(
            f"got {len(block_weights)} weight vectors for "
            f"{spec.n_components} blocks"
        )
    for i, w in enumerate(block_weights):
        if len(w) != spec.block_width(i):
            raise ValueError(
                f"weight vector {i + 1} has {len(w)} entries, expected the "
                f"block width {spec.block_width(i)}"
            )
    merged = merge_chain_weights(block_weights)
    ambient = assemble_ideal(chain)
    ambient_slice = degree_slice(ambient, weight_order(merged), m).in_monomials

    if spec.n_components >= 2:
        mixed = monomial_slice(mixed_ideals(spec).union(), m).in_monomials
    else:
        mixed = ()

    embedded: list[tuple[Monomial, ...]] = []
    for i in range(spec.n_components):
        block = component_block_ideal(chain, i)
        piece = degree_slice(block, weight_order(block_weights[i]), m)
        coords = list(spec.block_coords(i))
        lifted = []
        for mono in piece.in_monomials:
            big = [0] * spec.arity
            for j, e in enumerate(mono):
                big[coords[j]] = e
            lifted.append(tuple(big))
        embedded.append(tuple(sorted(lifted)))

    junction_powers = tuple(
        unit_monomial(spec.arity, j, m) for j in spec.junctions
    )

    families: list[tuple[str, set[Monomial]]] = [("mixed", set(mixed))]
    for i, piece in enumerate(embedded):
        families.append((f"component {i + 1}", set(piece)))
    overlaps: list[str] = []
    for (name_a, set_a), (name_b, set_b) in itertools.combinations(families, 2):
        common = set_a & set_b
        if common:
            overlaps.append(
                f"{name_a} and {name_b} share {len(common)} monomials"
            )
    covered = set().union(*(s for _, s in families))
    for power in junction_powers:
        if power in covered:
            overlaps.append(f"junction power {power} appears in a family")
        if power in set(ambient_slice):
            overlaps.append(f"junction power {power} lies in the ambient slice")

    ambient_set = set(ambient_slice)
    missing = tuple(sorted(ambient_set - covered))
    extra = tuple(sorted(covered - ambient_set))
    return SlicePartitionReport(
        m=m,
        merged_weights=merged,
        ambient_in_slice=tuple(sorted(ambient_slice)),
        mixed_monomials=tuple(sorted(mixed)),
        embedded_slices=tuple(embedded),
        junction_powers=junction_powers,
        missing=missing,
        extra=extra,
        overlaps=tuple(overlaps),
    )
