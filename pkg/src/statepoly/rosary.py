"""Open chains of conics glued in pairs ("rosaries") and their slice data.

A rosary of genus ``r`` lives in coordinates ``x_0 .. x_{3r}``; component
``l`` (1-based, ``l = 1 .. r+1``) spans ``x_{3l-5} .. x_{3l-1}`` with the
indices clamped into range, so adjacent components share two coordinates.
The middle components ``2 <= l <= r`` are cut out by six explicit quadrics;
the two end components are user-supplied plane conics.

The module provides the component ideals, the cross-component monomial sets
``T_l^d``, a report-valued check that the degree-2/3 slice of the assembled
ideal's initial ideal (augmented by the junction powers) equals the union of
the component slices and the ``T_l^d``, and the integer sequences ``w_2`` /
``w_3`` (closed form and two-step recurrence) used to weigh those slices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .groebner import degree_slice, intersect_ideals
from .orders import MonomialOrder
from .rings import (
    Ideal,
    Monomial,
    Polynomial,
    degree_monomials,
    project_polynomial,
)

__all__ = [
    "RosarySpec",
    "WValue",
    "RosarySliceReport",
    "rosary_component_ideal",
    "rosary_end_conics",
    "rosary_assembled_ideal",
    "rosary_mixed_sets",
    "rosary_slice_decomposition_check",
    "rosary_w",
    "rosary_w_table",
    "slice_weight_sum",
]


@dataclass(frozen=True)
class RosarySpec:
    """A rosary of genus ``r``: ``r + 1`` components in ``3r + 1`` coordinates."""

    r: int

    def __init__(self, r: int):
        r = int(r)
        if r < 1:
            raise ValueError(f"rosary genus must be >= 1, got {r}")
        object.__setattr__(self, "r", r)

    @property
    def arity(self) -> int:
        return 3 * self.r + 1

    @property
    def n_components(self) -> int:
        return self.r + 1

    def component_coords(self, l: int) -> range:
        """Coordinates spanned by component ``l`` (1-based), clamped into
        ``0 .. 3r``."""
        if not 1 <= l <= self.r + 1:
            raise ValueError(f"component index {l} outside 1..{self.r + 1}")
        lo = max(0, 3 * l - 5)
        hi = min(3 * self.r, 3 * l - 1)
        return range(lo, hi + 1)


def _binomial(arity: int, plus: tuple[int, int], minus: tuple[int, int]) -> Polynomial:
    """The difference of two quadratic monomials given by coordinate pairs."""
    terms: dict[Monomial, Fraction] = {}

    def mono(pair: tuple[int, int]) -> Monomial:
        exp = [0] * arity
        exp[pair[0]] += 1
        exp[pair[1]] += 1
        return tuple(exp)

    terms[mono(plus)] = Fraction(1)
    key = mono(minus)
    terms[key] = terms.get(key, Fraction(0)) - 1
    return Polynomial(arity, {k: v for k, v in terms.items() if v})


def rosary_component_ideal(l: int, spec: RosarySpec) -> Ideal:
    """The six quadrics cutting out middle component ``l`` (``2 <= l <= r``),
    at ambient arity."""
    if not 2 <= l <= spec.r:
        raise ValueError(
            f"middle component index {l} outside 2..{spec.r}; "
            f"end components are user-supplied"
        )
    arity = spec.arity
    a, b, c, d, e = (3 * l - 5, 3 * l - 4, 3 * l - 3, 3 * l - 2, 3 * l - 1)
    gens = (
        _binomial(arity, (d, d), (c, e)),
        _binomial(arity, (c, d), (a, e)),
        _binomial(arity, (a, d), (b, e)),
        _binomial(arity, (c, c), (b, e)),
        _binomial(arity, (a, c), (b, d)),
        _binomial(arity, (a, a), (b, c)),
    )
    return Ideal(arity, gens)


def rosary_end_conics(spec: RosarySpec) -> tuple[Ideal, Ideal]:
    """Smooth plane conics for the two end components, tangent to their
    neighbors at the shared points: ``x_0 x_2 - x_1^2`` on the left and
    ``x_{3r-2}^2 - x_{3r-1} x_{3r}`` on the right (each repeats the edge
    pattern of the adjacent middle component, giving degree-2 initial data
    ``x_0 x_2`` and ``x_{3r-2}^2`` under an order sorting lower indices
    first)."""
    arity = spec.arity
    first = Ideal(arity, (_binomial(arity, (0, 2), (1, 1)),))
    n = 3 * spec.r
    last = Ideal(arity, (_binomial(arity, (n - 2, n - 2), (n - 1, n)),))
    return first, last


def _all_component_ideals(
    spec: RosarySpec, end_components: Sequence[Ideal]
) -> list[Ideal]:
    if len(end_components) != 2:
        raise ValueError("expected exactly two end component ideals")
    first, last = end_components
    out: list[Ideal] = []
    for l in range(1, spec.r + 2):
        if l == 1:
            comp = first
        elif l == spec.r + 1:
            comp = last
        else:
            comp = rosary_component_ideal(l, spec)
        if comp.arity != spec.arity:
            raise ValueError(
                f"component {l} has arity {comp.arity}, expected {spec.arity}"
            )
        coords = set(spec.component_coords(l))
        stray = sorted(comp.support_variables() - coords)
        if stray:
            raise ValueError(
                f"component {l} uses coordinates {stray} outside its span "
                f"{sorted(coords)}"
            )
        out.append(comp)
    return out


def rosary_assembled_ideal(
    spec: RosarySpec, end_components: Sequence[Ideal]
) -> Ideal:
    """Intersection of the embedded component ideals: each component
    contributes its generators plus the coordinates outside its span."""
    arity = spec.arity
    embedded: list[Ideal] = []
    for l, comp in enumerate(_all_component_ideals(spec, end_components), start=1):
        coords = set(spec.component_coords(l))
        outside = [
            Polynomial.variable(arity, j) for j in range(arity) if j not in coords
        ]
        embedded.append(Ideal(arity, tuple(comp.generators) + tuple(outside)))
    result = embedded[0]
    for nxt in embedded[1:]:
        result = intersect_ideals(result, nxt)
    return result


def rosary_mixed_sets(l: int, d: int, spec: RosarySpec) -> frozenset[Monomial]:
    """Degree-``d`` monomials in ``x_0 .. x_{min(3l+2, 3r)}`` that use some
    coordinate below ``3l - 2`` and some coordinate above ``3l - 1``."""
    if d not in (2, 3):
        raise ValueError(f"degree d must be 2 or 3, got {d}")
    if not 1 <= l <= spec.r:
        raise ValueError(f"mixing index {l} outside 1..{spec.r}")
    top = min(3 * l + 2, 3 * spec.r)
    lo_cut = 3 * l - 2
    hi_cut = 3 * l - 1
    arity = spec.arity
    out: set[Monomial] = set()
    for small in degree_monomials(top + 1, d):
        if not any(e for i, e in enumerate(small) if i < lo_cut):
            continue
        if not any(e for i, e in enumerate(small) if i > hi_cut):
            continue
        out.add(tuple(small) + (0,) * (arity - top - 1))
    return frozenset(out)


def _restrict_order(order: MonomialOrder, coords: Sequence[int]) -> MonomialOrder:
    """The order induced on the subring of the given coordinates (compare by
    the same matrix rows, restricted to those columns)."""
    rows = [tuple(row[j] for j in coords) for row in order.rows]
    return MonomialOrder(len(coords), rows, name=f"{order.name}|{tuple(coords)!r}")


@dataclass(frozen=True)
class RosarySliceReport:
    """Both sides of the degree-``d`` slice comparison and their difference.

    The left side is the initial-ideal slice of the assembled ideal plus the
    junction powers (``x_{3l-2}^2`` for ``d = 2``; ``x_{3l-2}^3`` and
    ``x_{3l-2}^2 x_{3l-1}`` for ``d = 3``); the right side is the union of
    the embedded component slices and the cross-component sets ``T_l^d``.
    """

    r: int
    d: int
    in_slice: tuple[Monomial, ...]
    augmentation: tuple[Monomial, ...]
    component_slices: tuple[tuple[Monomial, ...], ...]
    mixed_sets: tuple[tuple[Monomial, ...], ...]
    left_side: tuple[Monomial, ...]
    right_side: tuple[Monomial, ...]
    missing: tuple[Monomial, ...]
    extra: tuple[Monomial, ...]

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra)


def _augmentation(spec: RosarySpec, d: int) -> tuple[Monomial, ...]:
    arity = spec.arity
    out: list[Monomial] = []
    for l in range(1, spec.r + 1):
        j = 3 * l - 2
        if d == 2:
            exp = [0] * arity
            exp[j] = 2
            out.append(tuple(exp))
        else:
            exp = [0] * arity
            exp[j] = 3
            out.append(tuple(exp))
            exp = [0] * arity
            exp[j] = 2
            exp[j + 1] = 1
            out.append(tuple(exp))
    return tuple(sorted(out))


def rosary_slice_decomposition_check(
    spec: RosarySpec,
    order: MonomialOrder,
    d: int,
    rosary_ideal: Ideal | None = None,
    end_components: Sequence[Ideal] | None = None,
) -> RosarySliceReport:
    """Compare the augmented degree-``d`` initial slice of the assembled
    rosary ideal with the union of component slices and ``T_l^d`` sets.

    Without an explicit ideal the canonical construction is used: the two
    default end conics and the intersection of all embedded components."""
    if d not in (2, 3):
        raise ValueError(f"degree d must be 2 or 3, got {d}")
    if order.arity != spec.arity:
        raise ValueError(
            f"order arity {order.arity} does not match ambient arity {spec.arity}"
        )
    if end_components is None:
        end_components = rosary_end_conics(spec)
    if rosary_ideal is None:
        rosary_ideal = rosary_assembled_ideal(spec, end_components=end_components)
    if rosary_ideal.arity != spec.arity:
        raise ValueError(
            f"ideal arity {rosary_ideal.arity} does not match ambient "
            f"arity {spec.arity}"
        )
    in_slice = degree_slice(rosary_ideal, order, d).in_monomials
    augmentation = _augmentation(spec, d)
    left = set(in_slice) | set(augmentation)

    component_slices: list[tuple[Monomial, ...]] = []
    for l, comp in enumerate(_all_component_ideals(spec, end_components), start=1):
        coords = list(spec.component_coords(l))
        block = Ideal(
            len(coords),
            tuple(project_polynomial(g, coords) for g in comp.generators),
        )
        piece = degree_slice(block, _restrict_order(order, coords), d)
        lifted = []
        for mono in piece.in_monomials:
            big = [0] * spec.arity
            for j, e in enumerate(mono):
                big[coords[j]] = e
            lifted.append(tuple(big))
        component_slices.append(tuple(sorted(lifted)))

    mixed_sets = tuple(
        tuple(sorted(rosary_mixed_sets(l, d, spec))) for l in range(1, spec.r + 1)
    )

    right: set[Monomial] = set()
    for piece in component_slices:
        right.update(piece)
    for piece in mixed_sets:
        right.update(piece)

    return RosarySliceReport(
        r=spec.r,
        d=d,
        in_slice=tuple(sorted(in_slice)),
        augmentation=augmentation,
        component_slices=tuple(component_slices),
        mixed_sets=mixed_sets,
        left_side=tuple(sorted(left)),
        right_side=tuple(sorted(right)),
        missing=tuple(sorted(left - right)),
        extra=tuple(sorted(right - left)),
    )


# ---------------------------------------------------------------------------
# the w-sequences


@dataclass(frozen=True)
class WValue:
    """One entry of the degree-2 or degree-3 weight sequence."""

    r: int
    i: int
    value: int
    mode: str


def _w_closed(r: int, i: int) -> int:
    if i == 2:
        if r % 2 == 1:
            return 18 * r * r - 19 * r + 7
        return 18 * r * r - 10 * r
    if r % 2 == 1:
        value = (
            27 * r**3
            + Fraction(81, 2) * r * r
            - Fraction(111, 2) * r
            + 22
        )
        if value.denominator != 1:
            raise ArithmeticError(f"closed form not integral at r={r}")
        return int(value)
    return 27 * r**3 + 54 * r * r - 33 * r


def _w_step(r: int, i: int) -> int:
    """Increment from ``r - 2`` to ``r`` in the two-step recurrence."""
    if i == 2:
        if r % 2 == 1:
            return 72 * r - 110
        return 72 * r - 92
    if r % 2 == 1:
        return 162 * r * r - 162 * r - 57
    return 162 * r * r - 108 * r - 66


_W_SEEDS = {(2, 1): 6, (2, 2): 52, (3, 1): 34, (3, 2): 366}


def _w_recurrence(r: int, i: int) -> int:
    if r <= 2:
        return _W_SEEDS[(i, r)]
    seed_r = 1 if r % 2 == 1 else 2
    value = _W_SEEDS[(i, seed_r)]
    for k in range(seed_r + 2, r + 1, 2):
        value += _w_step(k, i)
    return value


def rosary_w(r: int, i: int, mode: str = "closedForm") -> WValue:
    """The degree-``i`` weight sequence value at genus ``r``, by closed form
    or by the two-step recurrence from the seed values."""
    if r < 1:
        raise ValueError(f"genus must be >= 1, got {r}")
    if i not in (2, 3):
        raise ValueError(f"sequence index must be 2 or 3, got {i}")
    if mode == "closedForm":
        return WValue(r, i, _w_closed(r, i), mode)
    if mode == "recurrence":
        return WValue(r, i, _w_recurrence(r, i), mode)
    raise ValueError(f"unknown mode {mode!r}; expected 'closedForm' or 'recurrence'")


def rosary_w_table(r_max: int) -> list[dict[str, int | bool]]:
    """Rows ``r, w2_closed, w2_rec, w3_closed, w3_rec, agree`` for genus
    ``1 .. r_max``."""
    rows: list[dict[str, int | bool]] = []
    for r in range(1, r_max + 1):
        w2c = rosary_w(r, 2, "closedForm").value
        w2r = rosary_w(r, 2, "recurrence").value
        w3c = rosary_w(r, 3, "closedForm").value
        w3r = rosary_w(r, 3, "recurrence").value
        rows.append(
            {
                "r": r,
                "w2_closed": w2c,
                "w2_rec": w2r,
                "w3_closed": w3c,
                "w3_rec": w3r,
                "agree": w2c == w2r and w3c == w3r,
            }
        )
    return rows


def slice_weight_sum(monomials: Iterable[Monomial], weights: Sequence) -> Fraction:
    """Sum of the weight pairings of the given exponent tuples (the generic
    entry point for weighing a degree slice with an external weight vector)."""
    w = [Fraction(v) for v in weights]
    total = Fraction(0)
    for mono in monomials:
        if len(mono) != len(w):
            raise ValueError(
                f"monomial arity {len(mono)} does not match weight arity {len(w)}"
            )
        total += sum((wv * e for wv, e in zip(w, mono) if e), Fraction(0))
    return total
