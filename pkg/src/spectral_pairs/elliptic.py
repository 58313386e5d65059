"""Splitting types of f_* E for a 2:1 map f from an elliptic curve to P^1.

Encodes the closed-form case analysis for indecomposable bundles of degree
-1, 0, 1 (any rank), rank 2 degree 2, and sums of two line bundles of equal
degree 0 or 1. Anything else raises :class:`OutsideTable`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import OutsideTable
from .pairs import BGType

COVER_DEGREE = 2
ELLIPTIC_GENUS = 1


class Shape(str, enum.Enum):
    INDECOMPOSABLE = "indecomposable"
    DECOMPOSABLE = "decomposable_line_sum"


@dataclass(frozen=True)
class EllipticBundleSpec:
    rank: int
    degree: int
    shape: Shape = Shape.INDECOMPOSABLE
    h0: int | None = None
    line_degrees: tuple[int, int] | None = None
    line_h0: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "shape", Shape(self.shape))
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if self.h0 is not None and self.h0 not in (0, 1):
            raise ValueError("h0 of an indecomposable degree-0 bundle is 0 or 1")
        if self.shape is Shape.DECOMPOSABLE:
            if self.line_degrees is None or len(self.line_degrees) != 2:
                raise ValueError("a line-bundle sum needs two line degrees")
            a, b = self.line_degrees
            if a != b:
                raise ValueError("line bundles in the sum must share one degree")
            if self.rank != 2 or self.degree != a + b:
                raise ValueError("rank/degree disagree with the line degrees")


@dataclass(frozen=True)
class SplittingResult:
    bg: BGType
    degree_check: int


def h0_vanishing(degree: int) -> bool:
    """An indecomposable bundle of negative degree has no sections."""
    return degree < 0


def _indecomposable(n: int, d: int, h0: int | None) -> list[int]:
    if d == 0:
        if h0 is None:
            raise OutsideTable("degree 0 needs h0 in {0, 1} to pick the splitting")
        if h0 == 0:
            return [-1] * (2 * n)
        return [0] + [-1] * (2 * n - 2) + [-2]
    if d == 1:
        return [0] + [-1] * (2 * n - 1)
    if d == -1:
        return [-1] * (2 * n - 1) + [-2]
    if n == 2 and d == 2:
        return [0, 0, -1, -1]
    raise OutsideTable(
        f"no general computational strategy for an indecomposable bundle of rank {n}, degree {d}"
    )


def pushforward_splitting(spec: EllipticBundleSpec) -> SplittingResult:
    if spec.shape is Shape.INDECOMPOSABLE:
        parts = _indecomposable(spec.rank, spec.degree, spec.h0)
    else:
        a, _ = spec.line_degrees
        if a == 0:
            hs = spec.line_h0 if spec.line_h0 is not None else (None, None)
            parts = _indecomposable(1, 0, hs[0]) + _indecomposable(1, 0, hs[1])
        elif a == 1:
            parts = _indecomposable(1, 1, None) * 2
        else:
            raise OutsideTable(f"line-bundle sums are tabulated for degrees 0 and 1, not {a}")
    bg = BGType.sorted(parts)
    return SplittingResult(bg, spec.degree - COVER_DEGREE * spec.rank)


def decomposable_menu() -> list[SplittingResult]:
    """Pushforwards of L1 + L2 with deg L1 = deg L2 in {0, 1}."""
    out = []
    for h in [(0, 1), (1, 1), (0, 0)]:
        out.append(pushforward_splitting(
            EllipticBundleSpec(2, 0, Shape.DECOMPOSABLE, line_degrees=(0, 0), line_h0=h)
        ))
    out.append(pushforward_splitting(EllipticBundleSpec(2, 2, Shape.DECOMPOSABLE, line_degrees=(1, 1))))
    return out
