"""Global sections of O(k) on the projective line.

A section is stored by its representative on the chart ``x``; the
representative on the chart ``z = 1/x`` is ``z**k * rep(1/z)`` and is always
recomputed, never stored.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .ratpoly import Poly, gcd_squarefree, rational_roots, squarefree_decomposition

log = logging.getLogger(__name__)

INFINITY = "inf"


@dataclass(frozen=True)
class Section:
    k: int
    rep: Poly

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"O({self.k}) has no nonzero sections; twist must be >= 0")
        if not isinstance(self.rep, Poly):
            object.__setattr__(self, "rep", Poly(self.rep))
        if self.rep.degree > self.k:
            raise ValueError(
                f"representative of degree {self.rep.degree} exceeds twist {self.k}"
            )

    @classmethod
    def of(cls, k: int, coeffs: Iterable) -> "Section":
        return cls(k, Poly(coeffs))

    @classmethod
    def zero(cls, k: int) -> "Section":
        return cls(k, Poly())

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def flipped(self) -> "Section":
        return Section(self.k, flip_chart(self))

    def __mul__(self, other: "Section") -> "Section":
        return Section(self.k + other.k, self.rep * other.rep)

    @property
    def infinity_multiplicity(self) -> int:
        return self.k - self.rep.degree


def flip_chart(s: Section) -> Poly:
    """Representative on the second chart: ``z**k * s(1/z)``."""
    return s.rep.reversed(s.k + 1)


@dataclass(frozen=True)
class Zero:
    """A zero (or a block of conjugate irrational zeros) of a section.

    ``place`` is a rational point, :data:`INFINITY`, or the monic squarefree
    polynomial whose roots are the irrational zeros in this block; ``count``
    is the number of distinct points in the block.
    """

    place: Union[Fraction, str, Poly]
    multiplicity: int
    count: int = 1


def zero_profile(s: Section) -> list[Zero]:
    if s.is_zero():
        raise ValueError("the zero section vanishes identically")
    out: list[Zero] = []
    rest = s.rep
    for root, mult in rational_roots(s.rep).items():
        out.append(Zero(root, mult))
        rest = rest.exact_div(Poly([-root, 1]) ** mult)
    for factor, mult in squarefree_decomposition(rest):
        out.append(Zero(factor, mult, factor.degree))
    if s.infinity_multiplicity:
        out.append(Zero(INFINITY, s.infinity_multiplicity))
    return out


def is_generic(s: Section) -> bool:
    """True iff all ``k`` zeros of ``s`` on P^1 are distinct."""
    if s.is_zero():
        log.warning("zero section of O(%d) is not generic: it vanishes identically", s.k)
        return False
    if s.infinity_multiplicity > 1:
        return False
    return gcd_squarefree(s.rep).is_squarefree
