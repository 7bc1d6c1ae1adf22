"""Shared brute-force oracles and deterministic random generators.

Everything here is intentionally naive and independent of the library's own
algorithms so that tests compare two different routes to the same answer.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from statepoly.rings import Polynomial, degree_monomials


# ---------------------------------------------------------------------------
# exact linear algebra (tiny, standalone)


def gauss_solve(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve ``A x = b`` exactly for a unique solution.

    Returns the solution vector, or None when the system is inconsistent.
    Raises if a free column remains (callers only pass full-column-rank
    systems).
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [v * inv for v in aug[rank]]
        for r in range(m):
            if r != rank and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, m):
        if aug[r][n] != 0:
            return None
    if len(pivots) != n:
        raise ValueError("system is underdetermined")
    solution = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        solution[col] = aug[r][n]
    return solution


def affinely_independent(points: Sequence[Sequence[Fraction]]) -> bool:
    if len(points) <= 1:
        return True
    base = points[0]
    rows = [[Fraction(p[j]) - Fraction(base[j]) for j in range(len(base))] for p in points[1:]]
    # rank via elimination
    m, n = len(rows), len(rows[0])
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(m):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[rank])]
        rank += 1
        if rank == m:
            break
    return rank == m


def brute_hull_member(points: Sequence[Sequence], target: Sequence) -> bool:
    """Brute-force convex-hull membership via affinely independent subsets.

    Any point of the hull is a convex combination supported on an affinely
    independent subset (of size at most dim+1), for which the barycentric
    coordinates are the unique solution of an exact linear system.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    tgt = tuple(Fraction(x) for x in target)
    dim = len(tgt)
    max_size = min(len(pts), dim + 1)
    for size in range(1, max_size + 1):
        for subset in itertools.combinations(pts, size):
            if not affinely_independent(subset):
                continue
            rows = [[Fraction(1)] * size]
            rhs = [Fraction(1)]
            for j in range(dim):
                rows.append([p[j] for p in subset])
                rhs.append(tgt[j])
            lam = gauss_solve(rows, rhs)
            if lam is not None and all(v >= 0 for v in lam):
                return True
    return False


def brute_extreme_points(points: Sequence[Sequence]) -> set[tuple[Fraction, ...]]:
    """A point is extreme iff it is outside the hull of the other points."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    unique = sorted(set(pts))
    out = set()
    for p in unique:
        others = [q for q in unique if q != p]
        if not others or not brute_hull_member(others, p):
            out.add(p)
    return out


# ---------------------------------------------------------------------------
# random object generators (all driven by a caller-supplied random.Random)


def rand_monomial(rng: random.Random, arity: int, degree: int) -> tuple[int, ...]:
    mono = [0] * arity
    for _ in range(degree):
        mono[rng.randrange(arity)] += 1
    return tuple(mono)


def rand_polynomial(
    rng: random.Random,
    arity: int,
    max_degree: int,
    max_terms: int = 3,
    homogeneous: bool = False,
) -> Polynomial:
    degree = rng.randint(1, max_degree)
    terms: dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        d = degree if homogeneous else rng.randint(0, degree)
        mono = rand_monomial(rng, arity, d)
        coeff = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
    poly = Polynomial(arity, terms)
    if poly.is_zero:
        return Polynomial.from_monomial(arity, rand_monomial(rng, arity, degree))
    return poly


def rand_point(rng: random.Random, dim: int, span: int = 6) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(rng.randint(-span, span), rng.choice([1, 1, 2, 3])) for _ in range(dim)
    )


def all_degree_monomials(arity: int, degree: int):
    return degree_monomials(arity, degree)
