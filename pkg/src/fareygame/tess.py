"""Sup-norm tessellations of R^d by grids of equal closed cubes.

A complete tessellation with base point x' and cell radius R' has cells
indexed by m in Z^d; cell m is the product of
[(2 m_i - 1) R' + x'_i, (2 m_i + 1) R' + x'_i]. Finite pieces of it are
stored as integer index blocks, so every geometric question reduces to
comparisons of rational endpoints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .arith import BallD, ceil_q, floor_q, to_rational
from .errors import DomainError, FeasibilityError, PreconditionError

DEFAULT_BRUTE_BOUND = 8
BRUTE_MARGIN = 2


@dataclass(frozen=True)
class CompleteTess:
    base_point: tuple
    cell_radius: Fraction

    def __post_init__(self):
        R = to_rational(self.cell_radius)
        if R <= 0:
            raise DomainError("cell radius must be positive")
        # normalize the base point into [0, 2R')^d so equal grids compare equal
        base = tuple(to_rational(x) % (2 * R) for x in self.base_point)
        object.__setattr__(self, "cell_radius", R)
        object.__setattr__(self, "base_point", base)

    @property
    def dim(self) -> int:
        return len(self.base_point)

    def cell(self, m: Sequence[int]) -> BallD:
        R = self.cell_radius
        return BallD(tuple(2 * mi * R + x for mi, x in zip(m, self.base_point)), R)

    def edges(self, i: int, m: int) -> Tuple[Fraction, Fraction]:
        R, x = self.cell_radius, self.base_point[i]
        return (2 * m - 1) * R + x, (2 * m + 1) * R + x

    def index_of_center(self, i: int, c: Fraction) -> Optional[int]:
        t = (c - self.base_point[i]) / (2 * self.cell_radius)
        return t.numerator if t.denominator == 1 else None


@dataclass(frozen=True)
class TessBlock:
    parent: CompleteTess
    lo: Tuple[int, ...]
    hi: Tuple[int, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or any(a > b for a, b in zip(self.lo, self.hi)):
            raise DomainError("block bounds must satisfy lo <= hi per axis")

    @property
    def sides(self) -> Tuple[int, ...]:
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    @property
    def cardinality(self) -> int:
        n = 1
        for s in self.sides:
            n *= s
        return n

    @property
    def is_square(self) -> bool:
        return len(set(self.sides)) == 1

    def bounding(self) -> List[Tuple[Fraction, Fraction]]:
        return [(self.parent.edges(i, a)[0], self.parent.edges(i, b)[1])
                for i, (a, b) in enumerate(zip(self.lo, self.hi))]

    def union_ball(self) -> BallD:
        """The ball whose M-tessellation this square block is."""
        if not self.is_square:
            raise DomainError("only square blocks are tessellations of a ball")
        box = self.bounding()
        return BallD(tuple((a + b) / 2 for a, b in box), (box[0][1] - box[0][0]) / 2)

    def cells(self) -> List[Tuple[int, ...]]:
        return list(itertools.product(*[range(a, b + 1) for a, b in zip(self.lo, self.hi)]))

    def contains_block(self, other: "TessBlock") -> bool:
        return all(a <= c and d <= b for a, b, c, d in zip(self.lo, self.hi, other.lo, other.hi))

    def as_dict(self) -> dict:
        return {"lo": list(self.lo), "hi": list(self.hi), "cells": self.cardinality}


def m_tessellation(ball: BallD, M: int) -> List[BallD]:
    """The M^d cells of radius R/M that tile ``ball``."""
    if M < 1:
        raise DomainError("M must be a positive integer")
    R = ball.radius
    r = R / M
    axes = [[x - R + (2 * m - 1) * r for m in range(1, M + 1)] for x in ball.center]
    return [BallD(c, r) for c in itertools.product(*axes)]


def completion(ball: BallD, M: int) -> CompleteTess:
    """The unique complete tessellation containing the M-tessellation of ``ball``."""
    if M < 1:
        raise DomainError("M must be a positive integer")
    r = ball.radius / M
    if M % 2:
        return CompleteTess(ball.center, r)
    return CompleteTess(tuple(x - r for x in ball.center), r)


def refine_cells(cells: Sequence[BallD], N: int) -> List[BallD]:
    out = []
    for c in cells:
        out.extend(m_tessellation(c, N))
    return out


def _check(ball: BallD, tess: CompleteTess) -> Fraction:
    if ball.dim != tess.dim:
        raise DomainError("ball and tessellation dimensions differ")
    if ball.radius < tess.cell_radius:
        raise DomainError("ball radius must be at least the cell radius")
    return ball.radius / tess.cell_radius


def is_representable(ball: BallD, tess: CompleteTess) -> Tuple[bool, Optional[TessBlock]]:
    """Is ``ball`` exactly a union of cells? Returns the representing block."""
    ratio = _check(ball, tess)
    if ratio.denominator != 1:
        return False, None
    M = ratio.numerator
    Rp = tess.cell_radius
    shift = Fraction(0) if M % 2 else Rp
    lo = []
    for x, xp in zip(ball.center, tess.base_point):
        t = (x - xp - shift) / (2 * Rp)
        if t.denominator != 1:
            return False, None
        lo.append(ceil_q((x - ball.radius - xp + Rp) / (2 * Rp)))
    lo = tuple(lo)
    return True, TessBlock(tess, lo, tuple(a + M - 1 for a in lo))


def covering_range(x: Fraction, R: Fraction, xp: Fraction, Rp: Fraction) -> Tuple[int, int]:
    """Least index range whose cells cover [x - R, x + R] on one axis."""
    a = floor_q((x - R - xp - Rp) / (2 * Rp)) + 1
    b = ceil_q((x + R - xp + Rp) / (2 * Rp)) - 1
    return a, b


def inner_range(x: Fraction, R: Fraction, xp: Fraction, Rp: Fraction) -> Tuple[int, int]:
    """Index range of cells contained in [x - R, x + R] on one axis (may be empty)."""
    a = ceil_q((x - R - xp + Rp) / (2 * Rp))
    b = floor_q((x + R - xp - Rp) / (2 * Rp))
    return a, b


def minimal_tessellations(ball: BallD, tess: CompleteTess) -> List[TessBlock]:
    """All inclusion-minimal square blocks covering ``ball``, in lexicographic order.

    The side is the largest per-axis covering count; shorter axes may be
    extended on either side.
    """
    _check(ball, tess)
    Rp = tess.cell_radius
    ranges = [covering_range(x, ball.radius, xp, Rp) for x, xp in zip(ball.center, tess.base_point)]
    M = max(b - a + 1 for a, b in ranges)
    options = [range(b - M + 1, a + 1) for a, b in ranges]
    return [TessBlock(tess, lo, tuple(l + M - 1 for l in lo)) for lo in itertools.product(*options)]


def maximal_tessellations(ball: BallD, tess: CompleteTess) -> List[TessBlock]:
    """All inclusion-maximal square blocks inside ``ball`` (needs R >= 2R')."""
    ratio = _check(ball, tess)
    if ratio < 2:
        raise PreconditionError("maximal tessellations need R >= 2R'")
    Rp = tess.cell_radius
    ranges = [inner_range(x, ball.radius, xp, Rp) for x, xp in zip(ball.center, tess.base_point)]
    M = min(b - a + 1 for a, b in ranges)
    if M < 1:
        return []
    options = [range(a, b - M + 2) for a, b in ranges]
    return [TessBlock(tess, lo, tuple(l + M - 1 for l in lo)) for lo in itertools.product(*options)]


def minimal_tessellation(ball: BallD, tess: CompleteTess) -> TessBlock:
    """Single minimal cover, taking the lesser-coordinate option on each axis."""
    return minimal_tessellations(ball, tess)[0]


def maximal_tessellation(ball: BallD, tess: CompleteTess) -> TessBlock:
    """Single maximal packing, taking the lesser-coordinate option on each axis."""
    blocks = maximal_tessellations(ball, tess)
    if not blocks:
        raise DomainError("no cell fits inside the ball")
    return blocks[0]


def brute_force_blocks(ball: BallD, tess: CompleteTess, mode: str = "cover",
                       bound: int = DEFAULT_BRUTE_BOUND) -> List[TessBlock]:
    """Exhaustive search over square blocks near ``ball``.

    Enumerates every square block within BRUTE_MARGIN cells of the ball,
    keeps those covering it (mode "cover") or inside it (mode "packing")
    and returns the inclusion-minimal resp. -maximal ones.
    """
    if mode not in ("cover", "packing"):
        raise DomainError("mode must be 'cover' or 'packing'")
    ratio = _check(ball, tess)
    if ratio > bound:
        raise FeasibilityError(f"R/R' = {ratio} exceeds the enumeration bound {bound}")
    Rp = tess.cell_radius
    R = ball.radius
    region = []
    for x, xp in zip(ball.center, tess.base_point):
        region.append((floor_q((x - R - xp) / (2 * Rp)) - BRUTE_MARGIN,
                       ceil_q((x + R - xp) / (2 * Rp)) + BRUTE_MARGIN))
    width = max(b - a + 1 for a, b in region)
    d = tess.dim
    good = []
    for M in range(1, width + 1):
        starts = [range(a, b - M + 2) for a, b in region]
        for lo in itertools.product(*starts):
            hit = True
            for i in range(d):
                left = tess.edges(i, lo[i])[0]
                right = tess.edges(i, lo[i] + M - 1)[1]
                blo, bhi = ball.center[i] - R, ball.center[i] + R
                if mode == "cover":
                    hit = left <= blo and bhi <= right
                else:
                    hit = blo <= left and right <= bhi
                if not hit:
                    break
            if hit:
                good.append(TessBlock(tess, lo, tuple(l + M - 1 for l in lo)))
    out = []
    for s in good:
        if mode == "cover":
            extremal = not any(t != s and s.contains_block(t) for t in good)
        else:
            extremal = not any(t != s and t.contains_block(s) for t in good)
        if extremal:
            out.append(s)
    return sorted(out, key=lambda b: (b.lo, b.hi))


def minimal_cardinalities(ratio: Fraction, d: int, representable: bool) -> set:
    """Allowed sizes of a minimal cover, by the ratio R/R'."""
    if representable:
        return {ratio.numerator ** d}
    if ratio.denominator == 1:
        return {(ratio.numerator + 1) ** d}
    c = ceil_q(ratio)
    return {c ** d, (c + 1) ** d}


def maximal_cardinalities(ratio: Fraction, d: int, representable: bool) -> set:
    """Allowed sizes of a maximal packing, by the ratio R/R'."""
    if representable:
        return {ratio.numerator ** d}
    if ratio.denominator == 1:
        return {(ratio.numerator - 1) ** d}
    f = floor_q(ratio)
    return {f ** d, (f - 1) ** d}
