"""Degree and genus bookkeeping for factorizations of a cyclic spectral cover.

For a generic cyclic cover X_s -> P^1 of degree r = m * p with twist t, the
intermediate curve X sits in X_s -> X -> P^1 with deg f = m, deg g = p. Only
its numeric invariants are modelled.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


def pushforward_degree(deg_m: int, rank_m: int, g_source: int, g_target: int, deg_cover: int) -> int:
    """deg(pi_* M) = deg M + rank(1 - g_src) - deg(pi) rank (1 - g_tgt)."""
    if rank_m < 1 or deg_cover < 1 or g_source < 0 or g_target < 0:
        raise DomainError("pushforward needs rank >= 1, cover degree >= 1, genera >= 0")
    return deg_m + rank_m * (1 - g_source) - deg_cover * rank_m * (1 - g_target)


def _integral(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise RuntimeError(f"{what} = {q} is not an integer")
    return int(q)


def fully_ramified_genus(branch_points: int, degree: int) -> int:
    """Genus of a degree-n cover of P^1 with one point of index n over each of
    ``branch_points`` points and no other ramification."""
    return _integral(Fraction(branch_points * (degree - 1), 2) - degree + 1, "genus")


def cyclic_cover_genus(t: int, r: int) -> int:
    """(tr - 2)(r - 1)/2."""
    return fully_ramified_genus(t * r, r)


@dataclass(frozen=True)
class TowerPlan:
    t: int
    r: int
    m: int
    p: int
    d: int
    g_top: int
    g_mid: int
    d_prime: int
    d_dprime: int


def plan_tower(t: int, r: int, m: int, p: int, d: int) -> TowerPlan:
    if m * p != r:
        raise DomainError(f"{m} * {p} is not a factorization of {r}")
    if m < 2 or p < 2:
        raise DomainError("not a proper factorization: both factors must be >= 2")
    if t < 2:
        raise DomainError("the iterated correspondence is stated for t >= 2")
    g_top = cyclic_cover_genus(t, r)
    g_mid = _integral(Fraction(t * r * (p - 1), 2) + 1 - p, "intermediate genus")
    d_prime = _integral(d + (r - 1) * (Fraction(t * r - 2, 2) + 1), "d'")
    d_dprime = _integral(d + Fraction(m * t * r * (p - 1), 2), "d''")

    # composite projection formula: push d' along f, then along g
    via_f = pushforward_degree(d_prime, 1, g_top, g_mid, m)
    via_g = pushforward_degree(via_f, m, g_mid, 0, p)
    if via_f != d_dprime or via_g != d:
        raise RuntimeError(
            f"degree ledger inconsistent: f_* gives {via_f} (closed form {d_dprime}), "
            f"g_* gives {via_g} (expected {d})"
        )
    return TowerPlan(t, r, m, p, d, g_top, g_mid, d_prime, d_dprime)


def enumerate_towers(t: int, r: int, d: int) -> list[TowerPlan]:
    if r < 2:
        raise DomainError("cover degree must be at least 2")
    return [plan_tower(t, r, m, r // m, d) for m in range(2, r // 2 + 1) if r % m == 0 and r // m >= 2]


@dataclass(frozen=True)
class ChainLevel:
    cover_degree: int   # degree of the map into this level from the one above
    genus: int
    rank: int           # rank of the pushed-forward bundle on this level
    degree: int


def plan_chain(t: int, r: int, degrees: list[int], d: int) -> list[ChainLevel]:
    """Push a line bundle of degree d' on X_s down a chain of covers whose
    degrees multiply to r. Level i is itself a cyclic cover of P^1 of degree
    r / (m_1 ... m_i) fully ramified over the same t r points."""
    prod = 1
    for k in degrees:
        if k < 2:
            raise DomainError("every map in the chain must have degree >= 2")
        prod *= k
    if prod != r:
        raise DomainError(f"chain degrees {degrees} do not multiply to {r}")
    if t < 2:
        raise DomainError("the iterated correspondence is stated for t >= 2")
    top_genus = cyclic_cover_genus(t, r)
    d_prime = _integral(d + (r - 1) * (Fraction(t * r - 2, 2) + 1), "d'")
    levels = [ChainLevel(1, top_genus, 1, d_prime)]
    remaining, rank, deg, genus = r, 1, d_prime, top_genus
    for k in degrees:
        remaining //= k
        below = fully_ramified_genus(t * r, remaining)
        deg = pushforward_degree(deg, rank, genus, below, k)
        rank *= k
        genus = below
        levels.append(ChainLevel(k, genus, rank, deg))
    if deg != d:
        raise RuntimeError(f"chain pushforward ends at degree {deg}, expected {d}")
    return levels
