"""Monomial orders as integer weight matrices.

An order is a list of row vectors; monomials compare lexicographically on
their images under the rows.  Rows are stored with integer entries (rational
input rows are cleared by scaling, which never changes comparisons).  An
order is *valid* when it is total (the rows have full column rank) and a
well-order (in every column, the topmost nonzero entry is positive, so every
variable exceeds 1).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .rings import Monomial, Polynomial

Row = tuple[int, ...]


def _normalize_row(row: Sequence[int | Fraction]) -> Row:
    fracs = [Fraction(v) for v in row]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    content = 0
    for v in ints:
        content = gcd(content, v)
    if content > 1:
        ints = [v // content for v in ints]
    return tuple(ints)


class MonomialOrder:
    """Total multiplicative monomial order given by weight rows."""

    __slots__ = ("arity", "rows", "name", "_key_cache")

    def __init__(self, arity: int, rows: Iterable[Sequence[int | Fraction]], name: str = "matrix"):
        rows = tuple(_normalize_row(r) for r in rows)
        for r in rows:
            if len(r) != arity:
                raise ValueError(f"order row {r} does not match arity {arity}")
        self.arity = arity
        self.rows = rows
        self.name = name
        self._key_cache: dict[Monomial, tuple[int, ...]] = {}

    # -- comparisons ---------------------------------------------------------

    def key(self, mono: Monomial) -> tuple[int, ...]:
        """Sort key: tuples compare the same way the order compares monomials."""
        k = self._key_cache.get(mono)
        if k is None:
            k = tuple(sum(w * e for w, e in zip(row, mono)) for row in self.rows)
            self._key_cache[mono] = k
        return k

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0, or 1 as x^a <, =, > x^b."""
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0

    def leading_term(self, poly: Polynomial) -> tuple[Monomial, Fraction]:
        if poly.is_zero:
            raise ValueError("zero polynomial has no leading term")
        mono = max(poly.terms, key=self.key)
        return mono, poly.terms[mono]

    def leading_monomial(self, poly: Polynomial) -> Monomial:
        return self.leading_term(poly)[0]

    def sorted_monomials(self, monos: Iterable[Monomial]) -> list[Monomial]:
        return sorted(monos, key=self.key, reverse=True)

    # -- validation ----------------------------------------------------------

    def validate(self) -> list[str]:
        """Violation messages; empty means the matrix is a genuine monomial
        order (total and a well-order)."""
        problems: list[str] = []
        if _rational_rank(self.rows, self.arity) < self.arity:
            problems.append(
                f"not total: rows have rank < {self.arity}, distinct monomials can compare equal"
            )
        for col in range(self.arity):
            lead = next((row[col] for row in self.rows if row[col] != 0), None)
            if lead is None or lead < 0:
                problems.append(
                    f"not a well-order: first nonzero entry in column {col} must be positive"
                    f" (variable {col} would not exceed 1)"
                )
        return problems

    def __repr__(self) -> str:
        return f"MonomialOrder({self.name}, arity={self.arity})"


def _rational_rank(rows: Sequence[Row], width: int) -> int:
    mat = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    col = 0
    nrows = len(mat)
    while rank < nrows and col < width:
        pivot = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(nrows):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [v - factor * p for v, p in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# constructors


def lex_order(arity: int) -> MonomialOrder:
    rows = [tuple(1 if j == i else 0 for j in range(arity)) for i in range(arity)]
    return MonomialOrder(arity, rows, name="lex")


def grlex_order(arity: int) -> MonomialOrder:
    rows = [(1,) * arity]
    rows += [tuple(1 if j == i else 0 for j in range(arity)) for i in range(arity - 1)]
    return MonomialOrder(arity, rows, name="grlex")


def grevlex_order(arity: int) -> MonomialOrder:
    rows: list[tuple[int, ...]] = [(1,) * arity]
    for i in range(arity - 1, 0, -1):
        rows.append(tuple(-1 if j == i else 0 for j in range(arity)))
    return MonomialOrder(arity, rows, name="grevlex")


def weight_order(
    weights: Sequence[int | Fraction],
    tiebreak: MonomialOrder | str | None = None,
) -> MonomialOrder:
    """Weight row refined by a tie-break order (grevlex by default).

    ``tiebreak`` may be an order or a standard family name."""
    arity = len(weights)
    if tiebreak is None:
        tb = grevlex_order(arity)
    elif isinstance(tiebreak, str):
        tb = named_order(tiebreak, arity)
    else:
        tb = tiebreak
    if tb.arity != arity:
        raise ValueError("tie-break order arity mismatch")
    rows = [tuple(Fraction(w) for w in weights)] + list(tb.rows)
    return MonomialOrder(arity, rows, name=f"weight{tuple(weights)!r}")


def matrix_order(rows: Sequence[Sequence[int | Fraction]], name: str = "matrix") -> MonomialOrder:
    if not rows:
        raise ValueError("matrix order needs at least one row")
    arity = len(rows[0])
    return MonomialOrder(arity, rows, name=name)


def elimination_order(arity: int, eliminate: Iterable[int]) -> MonomialOrder:
    """Block order in which any monomial using an eliminated variable exceeds
    every monomial free of them; grevlex refines both blocks."""
    dead = sorted(set(eliminate))
    for i in dead:
        if not 0 <= i < arity:
            raise ValueError(f"eliminated coordinate {i} out of range")
    indicator = tuple(1 if i in set(dead) else 0 for i in range(arity))
    rows = [indicator] + list(grevlex_order(arity).rows)
    return MonomialOrder(arity, rows, name=f"eliminate{tuple(dead)!r}")


def named_order(name: str, arity: int) -> MonomialOrder:
    """Look up one of the standard order families by name."""
    table = {"lex": lex_order, "grlex": grlex_order, "grevlex": grevlex_order}
    if name not in table:
        raise ValueError(f"unknown order name {name!r}; expected one of {sorted(table)}")
    return table[name](arity)


def make_order(name: str, params: dict | None = None) -> MonomialOrder:
    """Build an order from a family name and a parameter mapping.

    Families: ``lex``/``grlex``/``grevlex`` (need ``arity``), ``weight``
    (needs ``weights``, optional ``tiebreak`` family name), ``matrix``
    (needs ``rows``), ``elimination`` (needs ``arity`` and ``eliminate``).
    """
    params = dict(params or {})
    if name in ("lex", "grlex", "grevlex"):
        if "arity" not in params:
            raise ValueError(f"order family {name!r} needs an 'arity' parameter")
        return named_order(name, int(params["arity"]))
    if name == "weight":
        if "weights" not in params:
            raise ValueError("order family 'weight' needs a 'weights' parameter")
        weights = tuple(params["weights"])
        tb_name = params.get("tiebreak")
        tb = named_order(tb_name, len(weights)) if tb_name else None
        return weight_order(weights, tiebreak=tb)
    if name == "matrix":
        if "rows" not in params:
            raise ValueError("order family 'matrix' needs a 'rows' parameter")
        return matrix_order([tuple(r) for r in params["rows"]])
    if name == "elimination":
        if "arity" not in params or "eliminate" not in params:
            raise ValueError("order family 'elimination' needs 'arity' and 'eliminate'")
        return elimination_order(int(params["arity"]), params["eliminate"])
    raise ValueError(f"unknown order family {name!r}")


def monomial_compare(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """Three-way comparison of two exponent tuples under an order."""
    return order.compare(a, b)


def order_validate(order: MonomialOrder) -> list[str]:
    """Violations that keep the matrix from defining a monomial order."""
    return order.validate()


# ---------------------------------------------------------------------------
# junction splicing


def merge_junction_weights(
    earlier: Sequence[int | Fraction], later: Sequence[int | Fraction]
) -> tuple[int, ...]:
    """Splice two block weight vectors that overlap in one shared coordinate
    (the last entry of ``earlier`` and the first entry of ``later``).

    The later block is translated by a constant so that the shared coordinate
    agrees, then the vectors are concatenated; translation by a constant does
    not change how equal-degree monomials supported on the block compare.  The
    result is scaled to integers.
    """
    if not earlier or not later:
        raise ValueError("both weight vectors must be nonempty")
    shift = Fraction(earlier[-1]) - Fraction(later[0])
    merged = [Fraction(v) for v in earlier] + [Fraction(v) + shift for v in later[1:]]
    denom = 1
    for f in merged:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    return tuple(int(f * denom) for f in merged)


def merge_junction_orders(
    earlier: Sequence[int | Fraction],
    later: Sequence[int | Fraction],
    junction: int | None = None,
) -> tuple[int, ...]:
    """Splice block weight vectors sharing the coordinate ``junction``.

    When ``junction`` is given, the earlier vector must cover coordinates
    ``0 .. junction`` inclusive (so its length is ``junction + 1``).
    """
    if junction is not None and len(earlier) != junction + 1:
        raise ValueError(
            f"earlier weight vector has length {len(earlier)}, "
            f"expected {junction + 1} to end at coordinate {junction}"
        )
    return merge_junction_weights(earlier, later)


def merge_chain_weights(block_weights: Sequence[Sequence[int | Fraction]]) -> tuple[int, ...]:
    """Fold junction splicing across a whole chain of block weight vectors."""
    if not block_weights:
        raise ValueError("need at least one block weight vector")
    acc: Sequence[int | Fraction] = tuple(block_weights[0])
    for nxt in block_weights[1:]:
        acc = merge_junction_weights(acc, nxt)
    return _normalize_vector(acc)


def _normalize_vector(values: Sequence[int | Fraction]) -> tuple[int, ...]:
    fracs = [Fraction(v) for v in values]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    return tuple(int(f * denom) for f in fracs)
