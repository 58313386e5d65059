"""Exact univariate polynomials over Q and polynomials in lambda over Q[x].

Coefficients are :class:`fractions.Fraction`. A :class:`Poly` stores the
coefficient of ``x**i`` at index ``i`` with trailing zeros stripped; the zero
polynomial has an empty coefficient tuple and degree ``-inf``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

NEG_INF = -math.inf


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Poly:
    """Immutable polynomial in ``x`` with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # constructors
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], lead: Scalar = 1) -> "Poly":
        out = cls.const(lead)
        for r in roots:
            out = out * cls([-_frac(r), 1])
        return out

    # basic queries
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x0: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                cs = str(abs(c))
                if "/" in cs and mono:
                    cs = f"({cs})"
                body = cs + ("*" + mono if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # ring operations
    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return Poly(), self
        quot = [Fraction(0)] * dq
        inv = 1 / other.lc
        for k in range(dq - 1, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def reversed(self, length: int) -> "Poly":
        """Coefficients reversed inside a window of ``length`` slots."""
        if len(self.coeffs) > length:
            raise ValueError("window shorter than the polynomial")
        padded = list(self.coeffs) + [Fraction(0)] * (length - len(self.coeffs))
        return Poly(reversed(padded))


def _as_poly(v):
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)):
        return Poly.const(v)
    return None


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def derivative(a: Poly) -> Poly:
    return a.derivative()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


@dataclass(frozen=True)
class SquarefreeTest:
    is_squarefree: bool
    gcd_with_derivative: Poly


def gcd_squarefree(a: Poly) -> SquarefreeTest:
    if a.is_zero():
        raise ValueError("undefined squarefree test for the zero polynomial")
    g = poly_gcd(a, a.derivative())
    return SquarefreeTest(g.is_constant(), g)


def squarefree_decomposition(a: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm. Returns monic squarefree ``(factor, multiplicity)``
    pairs with nonconstant factors, so that ``a = lc(a) * prod(f**m)``."""
    if a.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    a = a.monic()
    out = []
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a.exact_div(c)
    y = b.exact_div(c) if c else b
    i = 1
    while not w.is_constant():
        z = y - w.derivative()
        g = poly_gcd(w, z)
        if not g.is_constant():
            out.append((g, i))
        w = w.exact_div(g)
        y = z.exact_div(g)
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def integerize(a: Poly) -> list[int]:
    """Primitive integer coefficient list proportional to ``a``."""
    den = math.lcm(*(c.denominator for c in a.coeffs)) if a.coeffs else 1
    ints = [int(c * den) for c in a.coeffs]
    g = math.gcd(*ints) if ints else 1
    return [v // g for v in ints] if g else ints


def rational_roots(a: Poly) -> dict[Fraction, int]:
    """All roots of ``a`` in Q with their multiplicities."""
    if a.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    roots: dict[Fraction, int] = {}
    # strip the power of x first so the constant term is nonzero
    k = 0
    while k < len(a.coeffs) and a.coeffs[k] == 0:
        k += 1
    if k:
        roots[Fraction(0)] = k
        a = Poly(a.coeffs[k:])
    if a.is_constant():
        return roots
    ints = integerize(a)
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in {Fraction(p, q), Fraction(-p, q)}:
                if cand in roots or a(cand) != 0:
                    continue
                lin = Poly([-cand, 1])
                m = 0
                while not a.is_constant() and a(cand) == 0:
                    a = a.exact_div(lin)
                    m += 1
                roots[cand] = m
    return dict(sorted(roots.items()))


@dataclass(frozen=True)
class EisensteinResult:
    applies: bool
    witness_root: Fraction | None = None


def eisenstein_applies(s: Poly) -> EisensteinResult:
    """Look for a simple rational root x0 of ``s``.

    Such a root makes ``<x - x0>`` a prime ideal containing ``s`` but not its
    square, so ``lambda**r - s`` is Eisenstein at it for every r.
    """
    if s.is_zero():
        raise ValueError("eisenstein test needs a nonzero polynomial")
    for root, mult in rational_roots(s).items():
        if mult == 1:
            return EisensteinResult(True, root)
    return EisensteinResult(False, None)


class LambdaPoly:
    """Polynomial in lambda whose coefficients are :class:`Poly` in x.

    ``coeffs[j]`` is the coefficient of ``lambda**j``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Poly) else Poly.const(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LambdaPoly is immutable")

    @classmethod
    def spectral(cls, s: Sequence[Poly]) -> "LambdaPoly":
        """``lambda**n + s_1 lambda**(n-1) + ... + s_n``."""
        n = len(s)
        cs = [Poly()] * (n + 1)
        cs[n] = Poly.const(1)
        for i, si in enumerate(s, start=1):
            cs[n - i] = si
        return cls(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Poly:
        return self.coeffs[-1] if self.coeffs else Poly()

    @property
    def is_monic(self) -> bool:
        return self.lc == Poly.const(1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int) -> Poly:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Poly()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = LambdaPoly([other])
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("LambdaPoly", self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "LambdaPoly(0)"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c:
                parts.append(f"({c})*L^{j}" if j else f"({c})")
        return "LambdaPoly(" + " + ".join(parts) + ")"

    def __neg__(self):
        return LambdaPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_lpoly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return LambdaPoly(self.coeff(j) + other.coeff(j) for j in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_lpoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_lpoly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return LambdaPoly(c * other for c in self.coeffs)
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LambdaPoly()
        out = [Poly()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return LambdaPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = LambdaPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def derivative(self) -> "LambdaPoly":
        """Formal derivative in lambda."""
        return LambdaPoly(c * j for j, c in enumerate(self.coeffs) if j)

    def at_x(self, x0: Scalar) -> Poly:
        """Specialize x to a rational, leaving a polynomial in lambda."""
        return Poly(c(x0) for c in self.coeffs)


def _as_lpoly(v):
    if isinstance(v, LambdaPoly):
        return v
    if isinstance(v, (int, Fraction, Poly)):
        return LambdaPoly([v])
    return None


def bareiss_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free determinant of a square matrix over Q[x]."""
    n = len(matrix)
    if n == 0:
        return Poly.const(1)
    a = [[_as_poly(e) for e in row] for row in matrix]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Poly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def sylvester_matrix(f: LambdaPoly, g: LambdaPoly) -> list[list[Poly]]:
    """Sylvester matrix in lambda, rows of ``f`` first, highest power leftmost."""
    m, n = f.degree, g.degree
    size = m + n
    fc = [f.coeff(m - i) for i in range(m + 1)]
    gc = [g.coeff(n - i) for i in range(n + 1)]
    rows = []
    for i in range(n):
        rows.append([Poly()] * i + fc + [Poly()] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Poly()] * i + gc + [Poly()] * (size - n - 1 - i))
    return rows


def resultant(f: LambdaPoly, g: LambdaPoly) -> Poly:
    """Resultant in lambda as the Sylvester determinant over Q[x]."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if f.degree == 0 and g.degree == 0:
        raise ValueError("resultant undefined: both inputs are constant in lambda")
    return bareiss_det(sylvester_matrix(f, g))


def discriminant(f: LambdaPoly) -> Poly:
    """``(-1)**(d(d-1)/2) * Res(f, f') / lc(f)`` for lambda-degree d >= 1."""
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs positive lambda-degree")
    res = resultant(f, f.derivative())
    if d * (d - 1) // 2 % 2:
        res = -res
    return res.exact_div(f.lc)
