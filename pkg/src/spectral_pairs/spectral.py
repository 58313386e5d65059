"""Spectral curves of points of the Hitchin base over P^1."""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .pairs import HitchinTuple
from .ratpoly import LambdaPoly, Poly, discriminant, eisenstein_applies, squarefree_decomposition
from .sections import Section, flip_chart, is_generic

log = logging.getLogger(__name__)

BASE_GENUS = 0


class Tri(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


def discriminant_section(h: HitchinTuple) -> Section:
    """Branch-locus section of O(t r(r-1)).

    Normalized as ``(-1)^(r(r-1)/2) Res_lambda(P, dP/dlambda)`` for the monic
    spectral polynomial P, so ``lambda^2 - s`` gives ``4 s``.
    """
    if h.r < 2:
        raise DomainError("no branch data: a rank-1 spectral cover is an isomorphism")
    k = h.t * h.r * (h.r - 1)
    disc = discriminant(h.spectral_polynomial())
    if disc.degree > k:
        raise RuntimeError(f"invariant breach: discriminant degree {disc.degree} > {k}")
    return Section(k, disc)


def smooth_locus_check(h: HitchinTuple) -> bool:
    disc = discriminant_section(h)
    if disc.is_zero():
        log.warning("non-reduced discriminant: the spectral polynomial has a repeated factor")
        return False
    return is_generic(disc)


def _exact_root(q: Fraction, d: int) -> Fraction | None:
    """Rational d-th root of q when one exists."""

    def iroot(n: int) -> int | None:
        lo, hi = 0, 1
        while hi**d <= n:
            hi *= 2
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid**d <= n:
                lo = mid
            else:
                hi = mid - 1
        return lo if lo**d == n else None

    if q < 0 and d % 2 == 0:
        return None
    num, den = iroot(abs(q.numerator)), iroot(q.denominator)
    if num is None or den is None:
        return None
    root = Fraction(num, den)
    return -root if q < 0 else root


@dataclass(frozen=True)
class IntegralityVerdict:
    verdict: Tri
    reason: str
    # lambda^r - s = factor * cofactor, present only when verdict is NO
    factor: LambdaPoly | None = None
    cofactor: LambdaPoly | None = None


def _power_certificate(r: int, s: Poly) -> tuple[LambdaPoly, LambdaPoly] | None:
    blocks = squarefree_decomposition(s)
    g = 0
    for _, mult in blocks:
        g = math.gcd(g, mult)
    for d in range(2, r + 1):
        if r % d or (g and g % d):
            continue
        c = _exact_root(s.lc, d)
        if c is None:
            continue
        w = Poly.const(c)
        for f, mult in blocks:
            w = w * f ** (mult // d)
        e = r // d
        lam_e = LambdaPoly([0] * e + [1])
        factor = lam_e - LambdaPoly([w])
        cofactor = LambdaPoly()
        for j in range(d):
            cofactor = cofactor + LambdaPoly([w**j]) * lam_e ** (d - 1 - j)
        return factor, cofactor
    return None


def cyclic_integrality(t: int, r: int, s: Section) -> IntegralityVerdict:
    """Integrality of the spectral curve of lambda^r - s."""
    if s.is_zero():
        raise DomainError("cyclic integrality needs a nonzero section")
    if s.k != t * r:
        raise DomainError(f"s must be a section of O({t * r}), got O({s.k})")
    if r == 1:
        return IntegralityVerdict(Tri.YES, "degree-one cover")
    for chart, rep in (("x", s.rep), ("z", flip_chart(s))):
        ei = eisenstein_applies(rep)
        if ei.applies:
            return IntegralityVerdict(
                Tri.YES, f"Eisenstein at the simple root {ei.witness_root} on the {chart} chart"
            )
    if is_generic(s):
        return IntegralityVerdict(Tri.YES, "generic section: distinct zeros on P^1")
    cert = _power_certificate(r, s.rep)
    if cert is not None:
        factor, cofactor = cert
        target = LambdaPoly([-s.rep] + [0] * (r - 1) + [1])
        if factor * cofactor != target:
            raise RuntimeError("factorization certificate failed to verify")
        return IntegralityVerdict(Tri.NO, "s is a rational perfect power", factor, cofactor)
    return IntegralityVerdict(Tri.UNDECIDED, "no certificate either way")


@dataclass(frozen=True)
class GenusData:
    euler_char: int
    genus: int


def genus_formula(t: int, r: int) -> GenusData:
    """chi(O_{X_s}) = -t r(r-1)/2 + r and g = 1 - chi, base curve P^1."""
    if t < 1 or r < 1:
        raise DomainError("genus formula needs t >= 1 and r >= 1")
    chi = -t * r * (r - 1) // 2 + r
    return GenusData(chi, 1 - chi)


def genus_hurwitz_cyclic(t: int, r: int) -> int:
    """Riemann-Hurwitz for lambda^r - s with s generic: t r branch points,
    each with a single preimage of ramification index r."""
    if t < 1 or r < 2:
        raise DomainError("cyclic Hurwitz count needs t >= 1 and r >= 2")
    branch_total = t * r * (r - 1)
    two_g_minus_two = branch_total + 2 * r * (BASE_GENUS - 1)
    if two_g_minus_two % 2:
        raise RuntimeError("Hurwitz count produced an odd Euler characteristic")
    return two_g_minus_two // 2 + 1


def is_cyclic(h: HitchinTuple) -> bool:
    return all(si.is_zero() for si in h.s[:-1])


@dataclass(frozen=True)
class SpectralReport:
    t: int
    r: int
    discriminant_section: Section
    is_smooth_locus: bool
    is_integral: Tri
    euler_char: int
    genus: int
    ramification: list[tuple[int, int]]
    cyclic: bool = False
    hurwitz_genus: int | None = None
    integrality_reason: str = ""
    certificate: tuple[LambdaPoly, LambdaPoly] | None = None
    diagnostics: list[str] = field(default_factory=list)


def _quadratic_integrality(disc: Poly) -> IntegralityVerdict:
    # lambda^2 + s1 lambda + s2 splits over C(x) iff s1^2 - 4 s2 is a square
    if disc.is_zero():
        return IntegralityVerdict(Tri.NO, "spectral polynomial is a perfect square")
    if all(mult % 2 == 0 for _, mult in squarefree_decomposition(disc)):
        return IntegralityVerdict(Tri.NO, "discriminant is a square in C[x]")
    return IntegralityVerdict(Tri.YES, "discriminant has a zero of odd multiplicity")


def spectral_report(h: HitchinTuple) -> SpectralReport:
    disc = discriminant_section(h)
    diagnostics = []
    if disc.is_zero():
        diagnostics.append("degenerate: discriminant vanishes identically (non-reduced curve)")
    smooth = smooth_locus_check(h)
    g = genus_formula(h.t, h.r)
    cyclic = is_cyclic(h)
    verdict = IntegralityVerdict(Tri.UNDECIDED, "only cyclic and rank-2 cases are decided")
    if cyclic and not h.s[-1].is_zero():
        verdict = cyclic_integrality(h.t, h.r, Section(h.s[-1].k, -h.s[-1].rep))
    elif cyclic:
        verdict = IntegralityVerdict(Tri.NO, "nilpotent cone: lambda^r is non-reduced")
    if verdict.verdict is Tri.UNDECIDED and h.r == 2:
        verdict = _quadratic_integrality(disc.rep)

    ramification: list[tuple[int, int]] = []
    hurwitz = None
    if cyclic and not h.s[-1].is_zero() and is_generic(h.s[-1]):
        ramification = [(h.r, h.t * h.r)]
        hurwitz = genus_hurwitz_cyclic(h.t, h.r)
    elif smooth:
        # every branch point is simple: one index-2 point over each zero
        ramification = [(2, disc.k)]
        hurwitz = (disc.k - 2 * h.r) // 2 + 1
    if not smooth and not ramification:
        diagnostics.append("outside the smooth locus: genus is the arithmetic genus")
    return SpectralReport(
        t=h.t,
        r=h.r,
        discriminant_section=disc,
        is_smooth_locus=smooth,
        is_integral=verdict.verdict,
        euler_char=g.euler_char,
        genus=g.genus,
        ramification=ramification,
        cyclic=cyclic,
        hurwitz_genus=hurwitz,
        integrality_reason=verdict.reason,
        certificate=(verdict.factor, verdict.cofactor) if verdict.factor is not None else None,
        diagnostics=diagnostics,
    )
