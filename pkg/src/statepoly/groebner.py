"""Buchberger's algorithm over the rationals with weight-matrix orders.

The public API works with ``Polynomial`` (Fraction coefficients); internally
the engine keeps coefficient-primitive integer polynomials and pseudo-reduces,
which avoids Fraction overhead on the hot path while staying exact.

Pair selection uses the normal strategy (smallest lcm under the active order)
and both classical pair-skipping criteria: the coprimality criterion and the
chain criterion.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .orders import MonomialOrder, elimination_order, grevlex_order
from .rings import (
    Ideal,
    Monomial,
    Polynomial,
    count_monomials,
    degree_monomials,
    mono_coprime,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

IntPoly = dict[Monomial, int]

ENUMERATION_LIMIT = 10**6


# ---------------------------------------------------------------------------
# integer-polynomial helpers


def _to_int_poly(poly: Polynomial) -> IntPoly:
    denom = 1
    for c in poly.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    out = {m: int(c * denom) for m, c in poly.terms.items()}
    return _primitive(out)


def _primitive(p: IntPoly) -> IntPoly:
    if not p:
        return p
    content = 0
    for c in p.values():
        content = gcd(content, c)
    if content > 1:
        p = {m: c // content for m, c in p.items()}
    return p


def _lead(p: IntPoly, key) -> Monomial:
    return max(p, key=key)


def _orient(p: IntPoly, key) -> IntPoly:
    """Make the leading coefficient positive."""
    if p and p[_lead(p, key)] < 0:
        return {m: -c for m, c in p.items()}
    return p


def _normal_form_int(p: IntPoly, leads: list[Monomial], polys: list[IntPoly], key) -> tuple[IntPoly, int]:
    """Full normal form by pseudo-division.

    Returns ``(r, s)`` with ``s > 0`` such that ``s*p - r`` lies in the ideal
    generated by ``polys`` and no monomial of ``r`` is divisible by any lead.
    """
    work = dict(p)
    remainder: IntPoly = {}
    scale = 1
    heap = [(tuple(-v for v in key(m)), m) for m in work]
    heapq.heapify(heap)
    nbasis = len(leads)
    while heap:
        _, mono = heapq.heappop(heap)
        coeff = work.get(mono, 0)
        if coeff == 0:
            continue
        hit = -1
        for idx in range(nbasis):
            if mono_divides(leads[idx], mono):
                hit = idx
                break
        if hit < 0:
            remainder[mono] = remainder.get(mono, 0) + coeff
            del work[mono]
            continue
        g = polys[hit]
        glead = leads[hit]
        gcoeff = g[glead]
        t = gcd(coeff, gcoeff)
        mult_work = gcoeff // t
        mult_g = coeff // t
        if mult_work != 1:
            for m in work:
                work[m] *= mult_work
            for m in remainder:
                remainder[m] *= mult_work
            scale *= mult_work
            coeff *= mult_work
        shift = mono_div(mono, glead)
        for gm, gc in g.items():
            target = mono_mul(shift, gm)
            cur = work.get(target, 0) - mult_g * gc
            if cur:
                if target not in work:
                    heapq.heappush(heap, (tuple(-v for v in key(target)), target))
                work[target] = cur
            elif target in work:
                del work[target]
    return remainder, scale


def _spoly(fi: IntPoly, fj: IntPoly, li: Monomial, lj: Monomial, key) -> IntPoly:
    lcm = mono_lcm(li, lj)
    ci, cj = fi[li], fj[lj]
    t = gcd(ci, cj)
    mi, mj = cj // t, ci // t
    si, sj = mono_div(lcm, li), mono_div(lcm, lj)
    out: IntPoly = {}
    for m, c in fi.items():
        target = mono_mul(si, m)
        out[target] = out.get(target, 0) + mi * c
    for m, c in fj.items():
        target = mono_mul(sj, m)
        cur = out.get(target, 0) - mj * c
        if cur:
            out[target] = cur
        elif target in out:
            del out[target]
    return {m: c for m, c in out.items() if c}


def _buchberger_int(gens: list[IntPoly], order: MonomialOrder) -> list[IntPoly]:
    """Minimal (lead-interreduced) Groebner basis with primitive integer
    coefficients and positive leading coefficients."""
    key = order.key
    basis: list[IntPoly] = []
    leads: list[Monomial] = []
    for g in sorted((g for g in gens if g), key=lambda g: key(_lead(g, key))):
        basis.append(_orient(_primitive(dict(g)), key))
        leads.append(_lead(basis[-1], key))

    pending: set[tuple[int, int]] = set()
    heap: list[tuple[tuple[int, ...], int, int]] = []

    def push_pair(i: int, j: int) -> None:
        if i > j:
            i, j = j, i
        lcm = mono_lcm(leads[i], leads[j])
        pending.add((i, j))
        heapq.heappush(heap, ((mono_degree(lcm),) + key(lcm), i, j))

    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            push_pair(i, j)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        if mono_coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if mono_divides(leads[k], lcm):
                a, b = (i, k) if i < k else (k, i)
                c, d = (j, k) if j < k else (k, j)
                if (a, b) not in pending and (c, d) not in pending:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(basis[i], basis[j], li, lj, key)
        if not s:
            continue
        r, _ = _normal_form_int(s, leads, basis, key)
        r = _orient(_primitive(r), key)
        if not r:
            continue
        basis.append(r)
        leads.append(_lead(r, key))
        new = len(basis) - 1
        for k in range(new):
            push_pair(k, new)
    # drop elements whose lead is divisible by another lead (keep first of
    # equal leads; iterate in increasing lead order for determinism)
    idx = sorted(range(len(basis)), key=lambda i: key(leads[i]))
    kept: list[int] = []
    kept_leads: list[Monomial] = []
    for i in idx:
        if any(mono_divides(l, leads[i]) for l in kept_leads):
            continue
        kept.append(i)
        kept_leads.append(leads[i])
    return [basis[i] for i in kept]


def _minimal_leads(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    monos = sorted(set(gens), key=lambda m: (mono_degree(m), m))
    kept: list[Monomial] = []
    for m in monos:
        if not any(mono_divides(k, m) for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


# ---------------------------------------------------------------------------
# public objects


@dataclass(frozen=True)
class ReducedGB:
    """The unique reduced Groebner basis: monic elements, fully tail-reduced,
    sorted by increasing leading monomial."""

    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    leads: tuple[Monomial, ...]

    @property
    def arity(self) -> int:
        return self.order.arity

    def normal_form(self, poly: Polynomial) -> Polynomial:
        if poly.arity != self.arity:
            raise ValueError("arity mismatch in normal form")
        if poly.is_zero or not self.elements:
            return poly
        ints = [_to_int_poly(g) for g in self.elements]
        leads = list(self.leads)
        p = _to_int_poly(poly)
        if not p:
            return Polynomial.zero(self.arity)
        # recover the exact normal form of poly itself: scale back by the
        # pseudo-division multiplier and the primitive-part factor
        denom = 1
        for c in poly.terms.values():
            denom = denom * c.denominator // gcd(denom, c.denominator)
        scaled = {m: int(c * denom) for m, c in poly.terms.items()}
        content = 0
        for c in scaled.values():
            content = gcd(content, c)
        content = content or 1
        r, s = _normal_form_int(p, leads, ints, self.order.key)
        factor = Fraction(content, denom * s)
        return Polynomial(self.arity, {m: Fraction(c) * factor for m, c in r.items()})

    def contains(self, poly: Polynomial) -> bool:
        return self.normal_form(poly).is_zero


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal stored by its unique minimal generators."""

    arity: int
    gens: tuple[Monomial, ...]

    def __init__(self, arity: int, gens: Iterable[Monomial]):
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "gens", _minimal_leads(tuple(g) for g in gens))

    def contains(self, mono: Monomial) -> bool:
        return any(mono_divides(g, mono) for g in self.gens)

    def __or__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return MonomialIdeal(self.arity, self.gens + other.gens)


@dataclass(frozen=True)
class DegreeSlice:
    """The degree-``m`` monomials of an initial ideal and its complement."""

    arity: int
    m: int
    in_monomials: tuple[Monomial, ...]
    standard_monomials: tuple[Monomial, ...]


def buchberger(source: Ideal | Sequence[Polynomial], order: MonomialOrder) -> ReducedGB:
    """The reduced Groebner basis of the ideal under the given order."""
    gens = source.generators if isinstance(source, Ideal) else tuple(source)
    arity = order.arity
    for g in gens:
        if g.arity != arity:
            raise ValueError("generator arity does not match order arity")
    key = order.key
    basis = _buchberger_int([_to_int_poly(g) for g in gens], order)
    leads = [_lead(g, key) for g in basis]
    # tail-reduce each element against the others, then make monic
    reduced: list[Polynomial] = []
    for i, g in enumerate(basis):
        other_leads = leads[:i] + leads[i + 1 :]
        other_polys = basis[:i] + basis[i + 1 :]
        r, _ = _normal_form_int(dict(g), other_leads, other_polys, key)
        r = _orient(_primitive(r), key)
        lead_coeff = r[_lead(r, key)]
        reduced.append(Polynomial(arity, {m: Fraction(c, lead_coeff) for m, c in r.items()}))
    pairs = sorted(zip(leads, reduced), key=lambda t: key(t[0]))
    return ReducedGB(
        order=order,
        elements=tuple(p for _, p in pairs),
        leads=tuple(l for l, _ in pairs),
    )


def normal_form(poly: Polynomial, gb: ReducedGB) -> Polynomial:
    return gb.normal_form(poly)


def initial_leads(source: Ideal | Sequence[Polynomial], order: MonomialOrder) -> tuple[Monomial, ...]:
    """Minimal generators of the initial ideal (skips tail reduction)."""
    gens = source.generators if isinstance(source, Ideal) else tuple(source)
    basis = _buchberger_int([_to_int_poly(g) for g in gens], order)
    key = order.key
    return _minimal_leads(_lead(g, key) for g in basis)


def initial_ideal(source: Ideal | Sequence[Polynomial], order: MonomialOrder) -> MonomialIdeal:
    arity = order.arity
    return MonomialIdeal(arity, initial_leads(source, order))


def monomial_slice(mi: MonomialIdeal, m: int) -> DegreeSlice:
    """Split the degree-``m`` monomials into ideal members and standard ones."""
    total = count_monomials(mi.arity, m)
    if total > ENUMERATION_LIMIT:
        raise ValueError(
            f"degree slice would enumerate {total} monomials (> {ENUMERATION_LIMIT})"
        )
    inside: list[Monomial] = []
    outside: list[Monomial] = []
    for mono in degree_monomials(mi.arity, m):
        (inside if mi.contains(mono) else outside).append(mono)
    return DegreeSlice(mi.arity, m, tuple(sorted(inside)), tuple(sorted(outside)))


def degree_slice(source: Ideal | Sequence[Polynomial], order: MonomialOrder, m: int) -> DegreeSlice:
    return monomial_slice(initial_ideal(source, order), m)


def _slice_count_inclusion_exclusion(mi: MonomialIdeal, m: int) -> int:
    """Number of degree-``m`` monomials in the ideal, by inclusion-exclusion
    over the minimal generators (used when enumeration would be too large)."""
    arity = mi.arity
    gens = [g for g in mi.gens if mono_degree(g) <= m]
    total = 0

    def rec(start: int, current: Monomial, sign: int) -> None:
        nonlocal total
        for i in range(start, len(gens)):
            merged = mono_lcm(current, gens[i])
            d = mono_degree(merged)
            if d > m:
                continue
            total += sign * comb(m - d + arity - 1, arity - 1)
            rec(i + 1, merged, -sign)

    rec(0, (0,) * arity, 1)
    return total


def hilbert_values(
    source: Ideal | MonomialIdeal | Sequence[Polynomial],
    m: int,
    order: MonomialOrder | None = None,
) -> tuple[int, int]:
    """``(Q, P)``: the number of degree-``m`` monomials inside the initial
    ideal and the number of standard ones (``Q + P`` counts all degree-``m``
    monomials).  The split is independent of the order used internally."""
    if isinstance(source, MonomialIdeal):
        mi = source
    else:
        arity = source.arity if isinstance(source, Ideal) else source[0].arity
        mi = initial_ideal(source, order if order is not None else grevlex_order(arity))
    total = count_monomials(mi.arity, m)
    if total <= ENUMERATION_LIMIT:
        q = sum(1 for mono in degree_monomials(mi.arity, m) if mi.contains(mono))
    else:
        q = _slice_count_inclusion_exclusion(mi, m)
    return q, total - q


# ---------------------------------------------------------------------------
# elimination toolbox


def _shift_to_extended(poly: Polynomial, extra: int) -> Polynomial:
    """View a polynomial in ``arity`` variables inside ``arity+extra``
    variables (new coordinates appended at the end, unused)."""
    arity = poly.arity + extra
    return Polynomial(arity, {m + (0,) * extra: c for m, c in poly.terms.items()})


def eliminate(source: Ideal, keep: Sequence[int]) -> Ideal:
    """Intersect the ideal with the subring on the kept coordinates.

    The result stays in the ambient arity; its generators use only kept
    coordinates.
    """
    keep_set = set(keep)
    dead = [i for i in range(source.arity) if i not in keep_set]
    if not dead:
        return source
    order = elimination_order(source.arity, dead)
    gb = buchberger(source, order)
    kept = tuple(
        g for g in gb.elements if g.support_variables() <= keep_set
    )
    return Ideal(source.arity, kept)


def intersect_ideals(left: Ideal, right: Ideal) -> Ideal:
    """Ideal intersection via the single-parameter trick: eliminate ``t`` from
    t*left + (1-t)*right in an extended ring with ``t`` appended last."""
    if left.arity != right.arity:
        raise ValueError("arity mismatch in ideal intersection")
    arity = left.arity
    ext = arity + 1
    t = Polynomial.variable(ext, arity)
    one = Polynomial.constant(ext, 1)
    gens: list[Polynomial] = []
    for f in left.generators:
        gens.append(t * _shift_to_extended(f, 1))
    for g in right.generators:
        gens.append((one - t) * _shift_to_extended(g, 1))
    extended = Ideal(ext, gens)
    flat = eliminate(extended, keep=list(range(arity)))
    out = tuple(
        Polynomial(arity, {m[:arity]: c for m, c in g.terms.items()})
        for g in flat.generators
    )
    return Ideal(arity, out)


def implicitize(forms: Sequence[Polynomial], target_arity: int | None = None) -> Ideal:
    """Kernel of the ring map sending target variable ``i`` to ``forms[i]``.

    ``forms`` live in the parameter ring; the result is an ideal in
    ``len(forms)`` variables (the defining ideal of the image closure).
    """
    if not forms:
        raise ValueError("need at least one form")
    params = forms[0].arity
    for f in forms:
        if f.arity != params:
            raise ValueError("all forms must share the parameter ring")
    n_targets = len(forms)
    if target_arity is not None and target_arity != n_targets:
        raise ValueError("target arity must equal the number of forms")
    ext = params + n_targets
    gens: list[Polynomial] = []
    for i, f in enumerate(forms):
        xi = Polynomial.variable(ext, params + i)
        fe = _shift_to_extended(f, n_targets)
        gens.append(xi - fe)
    graph = Ideal(ext, gens)
    flat = eliminate(graph, keep=list(range(params, ext)))
    out = tuple(
        Polynomial(n_targets, {m[params:]: c for m, c in g.terms.items()})
        for g in flat.generators
    )
    return Ideal(n_targets, out)


def cone_interior_weight(gb: ReducedGB) -> tuple[int, ...]:
    """An integer weight vector in the open cone of orders realizing the
    basis' marked leading terms: w.(lead - tail) >= 1 for every tail monomial,
    found by exact feasibility LP and scaled to integers."""
    from .lp import LinearProgram, solve_lp

    arity = gb.arity
    constraints = []
    for poly, lead in zip(gb.elements, gb.leads):
        for mono in poly.terms:
            if mono == lead:
                continue
            diff = tuple(Fraction(a - b) for a, b in zip(lead, mono))
            constraints.append((diff, ">=", Fraction(1)))
    if not constraints:
        return (0,) * arity
    lp = LinearProgram(
        objective=tuple(Fraction(0) for _ in range(arity)),
        constraints=tuple(constraints),
        maximize=True,
    )
    res = solve_lp(lp)
    if res.status != "optimal":
        raise ValueError("no interior weight vector exists for the marked basis")
    denom = 1
    for v in res.point:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    vec = [int(v * denom) for v in res.point]
    content = 0
    for v in vec:
        content = gcd(content, v)
    if content > 1:
        vec = [v // content for v in vec]
    return tuple(vec)
