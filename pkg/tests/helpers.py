"""Random generators and sympy bridges shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

import sympy

from spectral_pairs.pairs import BGType, HitchinTuple, TwistedPair
from spectral_pairs.ratpoly import LambdaPoly, Poly
from spectral_pairs.sections import Section, is_generic

X, LAM = sympy.symbols("x lam")


def rand_coeff(rng: random.Random) -> Fraction:
    if rng.random() < 0.2:
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return Fraction(rng.randint(-5, 5))


def rand_poly(rng: random.Random, max_deg: int) -> Poly:
    if max_deg < 0:
        return Poly()
    return Poly(rand_coeff(rng) for _ in range(rng.randint(0, max_deg) + 1))


def rand_bg(rng: random.Random, r: int, spread: int = 3) -> BGType:
    return BGType.sorted([rng.randint(-spread, spread) for _ in range(r)])


def rand_pair(rng: random.Random, max_r: int = 5, max_t: int = 3, max_deg: int = 3) -> TwistedPair:
    r = rng.randint(1, max_r)
    t = rng.randint(1, max_t)
    bg = rand_bg(rng, r)
    phi = []
    for i in range(r):
        row = []
        for j in range(r):
            tw = bg.m[i] - bg.m[j] + t
            row.append(rand_poly(rng, min(tw, max_deg)) if tw >= 0 else Poly())
        phi.append(tuple(row))
    return TwistedPair(t, bg, tuple(phi))


def rand_tuple(rng: random.Random, r: int, t: int, max_deg: int | None = None) -> HitchinTuple:
    polys = [rand_poly(rng, t * i if max_deg is None else min(t * i, max_deg)) for i in range(1, r + 1)]
    return HitchinTuple.from_polys(t, polys)


def rand_generic_section(rng: random.Random, k: int) -> Section:
    while True:
        s = Section(k, rand_poly(rng, k))
        if s.rep.degree >= k - 1 and is_generic(s):
            return s


def to_sympy(p: Poly, var=X) -> sympy.Expr:
    return sum((sympy.Rational(c.numerator, c.denominator) * var**i for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def lambda_to_sympy(f: LambdaPoly) -> sympy.Expr:
    return sum((to_sympy(c) * LAM**j for j, c in enumerate(f.coeffs)), sympy.Integer(0))


def from_sympy(expr, var=X) -> Poly:
    if expr == 0:
        return Poly()
    coeffs = sympy.Poly(sympy.expand(expr), var).all_coeffs()[::-1]
    return Poly(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs)
