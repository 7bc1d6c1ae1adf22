"""Sparse multivariate polynomials over the rationals.

A monomial is an exponent tuple ``(e0, ..., e_{arity-1})`` of non-negative
integers.  A polynomial is a mapping from exponent tuples to nonzero
``Fraction`` coefficients; the zero polynomial has an empty mapping.  All
arithmetic is exact -- no floats anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]

# ---------------------------------------------------------------------------
# monomial helpers


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Exponent vector of x^a / x^b (caller guarantees divisibility)."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_support(a: Monomial) -> tuple[int, ...]:
    return tuple(i for i, e in enumerate(a) if e)


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def unit_monomial(arity: int, index: int, power: int = 1) -> Monomial:
    exp = [0] * arity
    exp[index] = power
    return tuple(exp)


def degree_monomials(arity: int, degree: int) -> list[Monomial]:
    """All exponent tuples of the given total degree, lexicographically
    descending (the canonical enumeration order used throughout)."""
    out: list[Monomial] = []

    def rec(prefix: list[int], left: int, pos: int) -> None:
        if pos == arity - 1:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, pos + 1)

    if arity == 0:
        return [()] if degree == 0 else []
    rec([], degree, 0)
    return out


def count_monomials(arity: int, degree: int) -> int:
    """Number of degree-``degree`` monomials in ``arity`` variables."""
    if degree < 0:
        return 0
    from math import comb

    return comb(degree + arity - 1, arity - 1)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable-by-convention sparse polynomial with Fraction coefficients."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = ()):
        if arity < 0:
            raise ValueError(f"arity must be non-negative, got {arity}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != arity:
                raise ValueError(f"monomial {mono} does not match arity {arity}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in monomial {mono}")
            c = clean.get(mono, Fraction(0)) + Fraction(coeff)
            if c:
                clean[mono] = c
            elif mono in clean:
                del clean[mono]
        self.arity = arity
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls(arity)

    @classmethod
    def constant(cls, arity: int, value: Scalar) -> "Polynomial":
        value = Fraction(value)
        if not value:
            return cls(arity)
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, index: int) -> "Polynomial":
        return cls(arity, {unit_monomial(arity, index): Fraction(1)})

    @classmethod
    def from_monomial(cls, arity: int, mono: Monomial, coeff: Scalar = 1) -> "Polynomial":
        return cls(arity, {tuple(mono): Fraction(coeff)})

    # -- queries ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def support_variables(self) -> frozenset[int]:
        out: set[int] = set()
        for m in self.terms:
            out.update(mono_support(m))
        return frozenset(out)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def evaluate_unit(self, index: int) -> Fraction:
        """Value at the point with coordinate ``index`` equal to 1 and all
        other coordinates 0 (sum of pure-power coefficients of that variable)."""
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            if all(e == 0 for i, e in enumerate(mono) if i != index):
                total += coeff
        return total

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = terms.get(mono, Fraction(0)) + coeff
            if c:
                terms[mono] = c
            elif mono in terms:
                del terms[mono]
        return Polynomial(self.arity, terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.arity, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Polynomial(self.arity)
            return Polynomial(self.arity, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = terms.get(m, Fraction(0)) + c1 * c2
                if c:
                    terms[m] = c
                elif m in terms:
                    del terms[m]
        return Polynomial(self.arity, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(self.arity, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def substitute_zero(self, coords: Iterable[int]) -> "Polynomial":
        """Set the given coordinates to zero (drop every term using them)."""
        dead = set(coords)
        terms = {m: c for m, c in self.terms.items() if not any(m[i] for i in dead)}
        return Polynomial(self.arity, terms)

    # -- structural ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in lexicographically descending monomial order (canonical
        serialization order)."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __repr__(self) -> str:
        if not self.terms:
            return "Polynomial(0)"
        parts = [f"{c}*x^{m}" for m, c in self.sorted_terms()]
        return "Polynomial(" + " + ".join(parts) + ")"


def project_polynomial(poly: Polynomial, coords: Sequence[int]) -> Polynomial:
    """Rewrite a polynomial supported on ``coords`` in the smaller ring whose
    variables are exactly those coordinates (in the given order)."""
    coords = list(coords)
    index = {c: i for i, c in enumerate(coords)}
    terms: dict[Monomial, Fraction] = {}
    for mono, coeff in poly.terms.items():
        small = [0] * len(coords)
        for i, e in enumerate(mono):
            if e:
                if i not in index:
                    raise ValueError(f"polynomial uses coordinate {i} outside {coords}")
                small[index[i]] = e
        terms[tuple(small)] = coeff
    return Polynomial(len(coords), terms)


def embed_polynomial(poly: Polynomial, arity: int, coords: Sequence[int]) -> Polynomial:
    """Embed a small-ring polynomial into a larger ring, sending variable ``i``
    of the small ring to coordinate ``coords[i]``."""
    coords = list(coords)
    if len(coords) != poly.arity:
        raise ValueError("coords must list one target coordinate per variable")
    terms: dict[Monomial, Fraction] = {}
    for mono, coeff in poly.terms.items():
        big = [0] * arity
        for i, e in enumerate(mono):
            big[coords[i]] = e
        terms[tuple(big)] = coeff
    return Polynomial(arity, terms)


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    """A finitely generated ideal, kept as its generator list."""

    arity: int
    generators: tuple[Polynomial, ...]

    def __init__(self, arity: int, generators: Iterable[Polynomial]):
        gens = tuple(g for g in generators if not g.is_zero)
        for g in gens:
            if g.arity != arity:
                raise ValueError(f"generator arity {g.arity} does not match ring arity {arity}")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "generators", gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def support_variables(self) -> frozenset[int]:
        out: set[int] = set()
        for g in self.generators:
            out |= g.support_variables()
        return frozenset(out)

    def max_generator_degree(self) -> int:
        return max((g.degree() for g in self.generators), default=-1)
