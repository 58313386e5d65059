"""Twisted pairs (E, phi) on P^1 with E split as O(m_1) + ... + O(m_r).

phi is held as an r x r matrix of first-chart polynomials; entry (i, j) is a
section of O(m_i - m_j + t) and is forced to vanish when that twist is
negative.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, UnpackableFactorization
from .ratpoly import LambdaPoly, Poly, bareiss_det, rational_roots, squarefree_decomposition
from .sections import Section

Matrix = tuple[tuple[Poly, ...], ...]


@dataclass(frozen=True)
class BGType:
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if not self.m:
            raise ValueError("a splitting type needs rank >= 1")
        if any(a < b for a, b in zip(self.m, self.m[1:])):
            raise ValueError(f"Grothendieck numbers must be non-increasing: {self.m}")

    @classmethod
    def sorted(cls, values: Sequence[int]) -> "BGType":
        return cls(tuple(sorted(values, reverse=True)))

    @property
    def rank(self) -> int:
        return len(self.m)

    @property
    def degree(self) -> int:
        return sum(self.m)


def slope(bg: BGType) -> Fraction:
    return Fraction(bg.degree, bg.rank)


def grothendieck_constraint(bg: BGType, t: int) -> bool:
    """Necessary condition m_i <= m_{i+1} + t for a semistable t-twisted pair."""
    return all(a <= b + t for a, b in zip(bg.m, bg.m[1:]))


def nitsure_dimension(r: int, t: int) -> int:
    """Tangent-space dimension r^2 deg L + 1 + h^1(L) for L = O(t) on P^1."""
    if t <= 0:
        raise DomainError("outside the treated cases: need deg L = t > deg K = -2 and t >= 1")
    # h^1(O(t)) = h^0(O(-t-2)) by Serre duality
    h1 = max(0, -t - 1)
    return r * r * t + 1 + h1


# -- matrices over Q[x] ------------------------------------------------------

def _identity(r: int) -> Matrix:
    one, zero = Poly.const(1), Poly()
    return tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    r = len(a)
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = Poly()
            for k in range(r):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _trace(a: Matrix) -> Poly:
    acc = Poly()
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


@dataclass(frozen=True)
class TwistedPair:
    t: int
    bg: BGType
    phi: Matrix

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("twist t must be positive")
        r = self.bg.rank
        phi = tuple(tuple(e if isinstance(e, Poly) else Poly(e) for e in row) for row in self.phi)
        if len(phi) != r or any(len(row) != r for row in phi):
            raise ValueError(f"phi must be {r}x{r}")
        for i in range(r):
            for j in range(r):
                tw = self.twist(i, j)
                e = phi[i][j]
                if tw < 0 and e:
                    raise ValueError(f"entry ({i},{j}) must vanish: O({tw}) has no sections")
                if e.degree > tw:
                    raise ValueError(f"entry ({i},{j}) has degree {e.degree} > twist {tw}")
        object.__setattr__(self, "phi", phi)

    @property
    def rank(self) -> int:
        return self.bg.rank

    def twist(self, i: int, j: int) -> int:
        return self.bg.m[i] - self.bg.m[j] + self.t

    def section(self, i: int, j: int) -> Section | None:
        tw = self.twist(i, j)
        return Section(tw, self.phi[i][j]) if tw >= 0 else None


@dataclass(frozen=True)
class HitchinTuple:
    t: int
    s: tuple[Section, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        for i, si in enumerate(self.s, start=1):
            if si.k != self.t * i:
                raise ValueError(f"s_{i} must be a section of O({self.t * i}), got O({si.k})")

    @classmethod
    def from_polys(cls, t: int, polys: Sequence[Poly]) -> "HitchinTuple":
        return cls(t, tuple(Section(t * i, p) for i, p in enumerate(polys, start=1)))

    @property
    def r(self) -> int:
        return len(self.s)

    @property
    def polys(self) -> tuple[Poly, ...]:
        return tuple(si.rep for si in self.s)

    def spectral_polynomial(self) -> LambdaPoly:
        return LambdaPoly.spectral(self.polys)


def _tuple_from_polys(t: int, polys: Sequence[Poly]) -> HitchinTuple:
    for i, p in enumerate(polys, start=1):
        if p.degree > t * i:
            raise RuntimeError(
                f"invariant breach: characteristic coefficient s_{i} has degree "
                f"{p.degree} > {t * i}"
            )
    return HitchinTuple.from_polys(t, polys)


def power_traces(p: TwistedPair) -> list[Poly]:
    """tr(phi), tr(phi^2), ..., tr(phi^r) on the first chart."""
    out, cur = [], p.phi
    for _ in range(p.rank):
        out.append(_trace(cur))
        cur = _matmul(cur, p.phi)
    return out


def char_coefficients_newton(p: TwistedPair) -> HitchinTuple:
    """s_i = (-1)^i tr(wedge^i phi), each exterior trace obtained as 1/i! times
    the determinant of the i x i matrix of power traces."""
    traces = power_traces(p)
    polys = []
    for i in range(1, p.rank + 1):
        newton = [
            [
                traces[a - b] if b <= a else (Poly.const(i - 1 - a) if b == a + 1 else Poly())
                for b in range(i)
            ]
            for a in range(i)
        ]
        e_i = bareiss_det(newton) * Fraction((-1) ** i, math.factorial(i))
        polys.append(e_i)
    return _tuple_from_polys(p.t, polys)


def _det_laplace(m: list[list[LambdaPoly]]) -> LambdaPoly:
    n = len(m)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> LambdaPoly:
        if row == n:
            return LambdaPoly([1])
        acc = LambdaPoly()
        for pos, c in enumerate(sorted(cols)):
            e = m[row][c]
            if e.is_zero():
                continue
            term = e * minor(row + 1, cols - {c})
            acc = acc - term if pos % 2 else acc + term
        return acc

    return minor(0, frozenset(range(n)))


def characteristic_polynomial(p: TwistedPair) -> LambdaPoly:
    """det(lambda I - phi) by cofactor expansion over Q[x][lambda]."""
    r = p.rank
    lam = LambdaPoly([0, 1])
    m = [
        [(lam if i == j else LambdaPoly()) - LambdaPoly([p.phi[i][j]]) for j in range(r)]
        for i in range(r)
    ]
    return _det_laplace(m)


def char_coefficients_det(p: TwistedPair) -> HitchinTuple:
    cp = characteristic_polynomial(p)
    r = p.rank
    return _tuple_from_polys(p.t, [cp.coeff(r - i) for i in range(1, r + 1)])


def cayley_hamilton_check(p: TwistedPair) -> bool:
    """phi^r + sum s_i phi^(r-i) == 0 over the first chart."""
    s = char_coefficients_det(p).polys
    r = p.rank
    powers = [_identity(r)]
    for _ in range(r):
        powers.append(_matmul(powers[-1], p.phi))
    for i in range(r):
        for j in range(r):
            acc = powers[r][i][j]
            for k, sk in enumerate(s, start=1):
                acc = acc + sk * powers[r - k][i][j]
            if acc:
                return False
    return True


def companion(h: HitchinTuple) -> TwistedPair:
    """Companion pair on O + O(-t) + ... + O(-(r-1)t)."""
    r, t = h.r, h.t
    bg = BGType(tuple(-t * i for i in range(r)))
    phi = [[Poly() for _ in range(r)] for _ in range(r)]
    for i in range(1, r):
        phi[i][i - 1] = Poly.const(1)
    for i in range(r):
        phi[i][r - 1] = -h.s[r - 1 - i].rep
    return TwistedPair(t, bg, tuple(tuple(row) for row in phi))


# -- cyclic chains -------------------------------------------------------------

def chain_capacities(bg: BGType, t: int) -> list[int]:
    """Twists of the subdiagonal slots u_1..u_{r-1} and of the corner u_r."""
    m = bg.m
    r = len(m)
    caps = [m[i + 1] - m[i] + t for i in range(r - 1)]
    caps.append(m[0] - m[-1] + t)
    return caps


@dataclass(frozen=True)
class CyclicChain:
    t: int
    bg: BGType
    u: tuple[Poly, ...]

    def __post_init__(self):
        u = tuple(e if isinstance(e, Poly) else Poly(e) for e in self.u)
        if len(u) != self.bg.rank:
            raise ValueError(f"a chain on rank {self.bg.rank} needs {self.bg.rank} entries")
        for i, (e, cap) in enumerate(zip(u, self.capacities), start=1):
            if cap < 0 and e:
                raise ValueError(f"u_{i} must vanish: O({cap}) has no sections")
            if e.degree > cap:
                raise ValueError(f"u_{i} has degree {e.degree} > twist {cap}")
        object.__setattr__(self, "u", u)

    @property
    def capacities(self) -> list[int]:
        return chain_capacities(self.bg, self.t)

    def sections(self) -> list[Section | None]:
        return [Section(c, e) if c >= 0 else None for e, c in zip(self.u, self.capacities)]

    def pair(self) -> TwistedPair:
        """Subdiagonal u_1..u_{r-1}, corner +u_r: characteristic polynomial
        is lambda^r - u_1 ... u_r."""
        r = self.bg.rank
        phi = [[Poly() for _ in range(r)] for _ in range(r)]
        for i in range(r - 1):
            phi[i + 1][i] = self.u[i]
        phi[0][r - 1] = phi[0][r - 1] + self.u[r - 1]
        return TwistedPair(self.t, self.bg, tuple(tuple(row) for row in phi))


@dataclass(frozen=True)
class FactoredSection:
    """A section of O(k) given as ``constant * prod(factor**mult)``.

    Factors are treated as indivisible when packing; callers pass irreducible
    factors when they know them.
    """

    k: int
    constant: Fraction
    factors: tuple[tuple[Poly, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "factors", tuple((Poly(f.coeffs), int(e)) for f, e in self.factors))
        if self.constant == 0:
            raise ValueError("factored form needs a nonzero constant")
        if any(f.degree < 1 or e < 1 for f, e in self.factors):
            raise ValueError("factors must be nonconstant with positive multiplicity")
        self.section()  # validates the degree bound

    def expand(self) -> Poly:
        out = Poly.const(self.constant)
        for f, e in self.factors:
            out = out * f**e
        return out

    def section(self) -> Section:
        return Section(self.k, self.expand())

    @classmethod
    def split_rational(cls, s: Section) -> "FactoredSection":
        """Split off rational linear factors; what is left is kept whole per
        squarefree-decomposition block."""
        if s.is_zero():
            raise ValueError("cannot factor the zero section")
        rest = s.rep
        factors = []
        for root, mult in rational_roots(s.rep).items():
            lin = Poly([-root, 1])
            factors.append((lin, mult))
            rest = rest.exact_div(lin**mult)
        for block, mult in squarefree_decomposition(rest):
            factors.append((block, mult))
        # every factor above is monic
        return cls(s.k, s.rep.lc, tuple(factors))


def _pack(sizes: list[int], caps: list[int]) -> list[int] | None:
    """Assign each item to a slot, trying slots in index order; complete by
    backtracking. Returns the slot index per item or None."""
    order = sorted(range(len(sizes)), key=lambda i: -sizes[i])
    free = [max(c, 0) for c in caps]
    where = [0] * len(sizes)

    def place(n: int) -> bool:
        if n == len(order):
            return True
        item = order[n]
        tried = set()
        for slot in range(len(free)):
            # slots with equal free room are interchangeable for this item
            key = (free[slot], slot == len(free) - 1)
            if free[slot] < sizes[item] or key in tried:
                continue
            tried.add(key)
            free[slot] -= sizes[item]
            where[item] = slot
            if place(n + 1):
                return True
            free[slot] += sizes[item]
        return False

    return where if place(0) else None


def cyclic_chain_build(bg: BGType, t: int, s: FactoredSection) -> CyclicChain:
    """Distribute the factors of ``s`` over the chain slots so that the induced
    pair has characteristic polynomial lambda^r - s."""
    if not grothendieck_constraint(bg, t):
        raise DomainError(f"splitting type {bg.m} violates m_i <= m_(i+1) + {t}")
    r = bg.rank
    if s.k != t * r:
        raise DomainError(f"s must be a section of O({t * r}), got O({s.k})")
    caps = chain_capacities(bg, t)
    items = [f for f, e in s.factors for _ in range(e)]
    where = _pack([f.degree for f in items], caps)
    if where is None:
        raise UnpackableFactorization(
            f"unpackable factorization: factor degrees {[f.degree for f in items]} "
            f"do not fit slot capacities {caps}"
        )
    u = [Poly.const(1) for _ in range(r)]
    for f, slot in zip(items, where):
        u[slot] = u[slot] * f
    u[r - 1] = u[r - 1] * s.constant
    return CyclicChain(t, bg, tuple(u))


class Stability(str, enum.Enum):
    STABLE = "stable"
    SEMISTABLE_ONLY = "semistable_only"
    UNSTABLE = "unstable"


def chain_stability(c: CyclicChain) -> Stability:
    """Verdict from the invariant subbundles a cyclic chain is known to have."""
    r = c.bg.rank
    mu = slope(c.bg)
    m = c.bg.m
    if any(not c.u[i] for i in range(r - 1)):
        # E_i = O(m_1)+...+O(m_i) is invariant; its slope beats mu(E)
        # unless every m_i coincides, in which case E itself is semistable
        return Stability.SEMISTABLE_ONLY if len(set(m)) == 1 else Stability.UNSTABLE
    if c.u[r - 1] or r == 1:
        return Stability.STABLE
    # nilpotent chain: the invariant subbundles are the tails O(m_j)+...+O(m_r)
    tails = [Fraction(sum(m[j:]), r - j) for j in range(1, r)]
    if all(x < mu for x in tails):
        return Stability.STABLE
    return Stability.SEMISTABLE_ONLY
