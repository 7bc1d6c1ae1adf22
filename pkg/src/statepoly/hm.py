"""Weight pairings of diagonal one-parameter subgroups with Hilbert points.

For a homogeneous ideal ``I`` at arity ``n + 1``, a weight vector
``rho = (r_0, ..., r_n)`` and a degree ``m``, the index computed here is

    mu = - sum of rho-weights of the standard degree-m monomials
         + (m * P(m) / (n + 1)) * (r_0 + ... + r_n)

where the standard monomials are taken under the rho-weight order refined by
grevlex and ``P(m)`` counts them.  Negative values certify that the
corresponding diagonal subgroup destabilizes the dual Hilbert point.

``hm_index_decomposed`` evaluates the same number for a chain of components
block by block (no ambient basis computation), and ``hm_from_aggregates``
exposes the bare arithmetic for precomputed monomial-weight sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chains import ChainInput, component_block_ideal, validate_chain
from .groebner import degree_slice
from .orders import MonomialOrder, named_order, weight_order
from .rings import Ideal, Monomial

__all__ = [
    "OnePS",
    "HMComponent",
    "HMReport",
    "hm_index_direct",
    "hm_index_decomposed",
    "hm_from_aggregates",
]


@dataclass(frozen=True)
class OnePS:
    """A diagonal one-parameter subgroup, stored by its coordinate weights."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights: Sequence):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in weights))

    @property
    def arity(self) -> int:
        return len(self.weights)

    def weight_of(self, mono: Monomial) -> Fraction:
        if len(mono) != self.arity:
            raise ValueError(f"monomial arity {len(mono)} != weight arity {self.arity}")
        return sum(
            (r * e for r, e in zip(self.weights, mono) if e),
            Fraction(0),
        )

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def restrict(self, coords: Sequence[int]) -> "OnePS":
        return OnePS([self.weights[j] for j in coords])


def _coerce_oneps(rho: OnePS | Sequence) -> OnePS:
    return rho if isinstance(rho, OnePS) else OnePS(rho)


@dataclass(frozen=True)
class HMComponent:
    """Per-block pieces of a decomposed index computation."""

    index: int
    mu: Fraction
    p_value: int
    weight_total: Fraction
    correction: Fraction


@dataclass(frozen=True)
class HMReport:
    """An index value together with the quantities that produced it."""

    mu: Fraction
    m: int
    standard_weight_sum: Fraction
    p_value: int
    weight_total: Fraction
    components: tuple[HMComponent, ...] | None = None
    junction_term: Fraction | None = None


def _rho_order(rho: OnePS, tiebreak: MonomialOrder | None = None) -> MonomialOrder:
    return weight_order(rho.weights, tiebreak=tiebreak)


def hm_index_direct(
    ideal: Ideal,
    m: int,
    rho: OnePS | Sequence,
    tiebreak: MonomialOrder | None = None,
) -> HMReport:
    """Index of the degree-``m`` dual Hilbert point of ``ideal`` at ``rho``.

    The standard monomials are taken under the ``rho``-weight order refined
    by grevlex (any refinement gives the same value; ``tiebreak`` permits
    checking that).
    """
    rho = _coerce_oneps(rho)
    if rho.arity != ideal.arity:
        raise ValueError(
            f"weight arity {rho.arity} does not match ideal arity {ideal.arity}"
        )
    if m < 0:
        raise ValueError(f"degree m must be >= 0, got {m}")
    piece = degree_slice(ideal, _rho_order(rho, tiebreak), m)
    sws = sum((rho.weight_of(mono) for mono in piece.standard_monomials), Fraction(0))
    p_value = len(piece.standard_monomials)
    total = rho.total()
    mu = -sws + Fraction(m * p_value, ideal.arity) * total
    return HMReport(
        mu=mu,
        m=m,
        standard_weight_sum=sws,
        p_value=p_value,
        weight_total=total,
    )


def hm_index_decomposed(
    chain: ChainInput,
    m: int,
    rho: OnePS | Sequence,
    tiebreak: MonomialOrder | None = None,
) -> HMReport:
    """Index of the assembled chain's dual Hilbert point, block by block.

    Each component contributes its own index at the restricted weights; the
    per-block centering terms are swapped for the ambient one, and each
    junction coordinate adds ``m`` times its weight (its pure power is
    standard for both adjacent blocks but is one ambient monomial).
    """
    report = validate_chain(chain)
    if not report.ok:
        raise ValueError("invalid chain input: " + "; ".join(report.violations))
    spec = chain.block_spec()
    rho = _coerce_oneps(rho)
    if rho.arity != spec.arity:
        raise ValueError(
            f"weight arity {rho.arity} does not match ambient arity {spec.arity}"
        )
    if m < 0:
        raise ValueError(f"degree m must be >= 0, got {m}")

    components: list[HMComponent] = []
    block_sws_total = Fraction(0)
    p_blocks = 0
    for i in range(spec.n_components):
        coords = list(spec.block_coords(i))
        block_rho = rho.restrict(coords)
        block_tb = None
        if tiebreak is not None:
            block_tb = named_order(tiebreak.name, len(coords))
        block_report = hm_index_direct(
            component_block_ideal(chain, i), m, block_rho, block_tb
        )
        correction = (
            Fraction(m * block_report.p_value, len(coords)) * block_rho.total()
        )
        components.append(
            HMComponent(
                index=i,
                mu=block_report.mu,
                p_value=block_report.p_value,
                weight_total=block_rho.total(),
                correction=correction,
            )
        )
        block_sws_total += block_report.standard_weight_sum
        p_blocks += block_report.p_value

    junctions = spec.junctions
    junction_term = Fraction(m) * sum(
        (rho.weights[j] for j in junctions), Fraction(0)
    )
    p_value = p_blocks - len(junctions)
    total = rho.total()
    mu = (
        sum((c.mu for c in components), Fraction(0))
        - sum((c.correction for c in components), Fraction(0))
        + Fraction(m * p_value, spec.arity) * total
        + junction_term
    )
    standard_weight_sum = block_sws_total - junction_term
    return HMReport(
        mu=mu,
        m=m,
        standard_weight_sum=standard_weight_sum,
        p_value=p_value,
        weight_total=total,
        components=tuple(components),
        junction_term=junction_term,
    )


def hm_from_aggregates(
    sum_y: Fraction | int,
    sum_z: Fraction | int,
    p: int,
    n: int,
    m: int,
    sum_r: Fraction | int,
    r_junctions: Sequence = (),
) -> Fraction:
    """The index from precomputed aggregates:

    ``mu = -sum_y - sum_z + (m * p / (n + 1)) * sum_r + m * sum(r_junctions)``

    where ``sum_y``/``sum_z`` are standard-monomial weight sums of the two
    sides of a decomposition, ``p`` the ambient standard-monomial count, and
    ``r_junctions`` the weights of the junction coordinates.
    """
    value = (
        -Fraction(sum_y)
        - Fraction(sum_z)
        + Fraction(m * p, n + 1) * Fraction(sum_r)
        + Fraction(m) * sum((Fraction(r) for r in r_junctions), Fraction(0))
    )
    return value
