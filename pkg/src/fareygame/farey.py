"""Farey sequences on [0, 1] and their integer translates.

Besides the sequences themselves this module provides the minimal-order
element of a short interval, the mediant chains that flank it (the half
Farey partition) and the Farey half-interval of an interval.

Internally a fraction is often handled in "global" form: the reduced value
P/q of p/q + k, so that P = p + k*q. Mediants and chain formulas are the
same in both forms because translation by k preserves the determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, List, Optional, Tuple

from .arith import Interval, ceil_q, floor_q, to_rational
from .errors import DomainError, FeasibilityError, OrderError

# chains longer than this are never materialized as lists
MAX_CHAIN = 10 ** 6


@dataclass(frozen=True, order=False)
class FareyFraction:
    """Reduced p/q translated by the integer k, with 0 <= p < q or (p, q) = (0, 1)."""

    p: int
    q: int
    k: int = 0

    def __post_init__(self):
        if self.q < 1:
            raise DomainError("Farey denominator must be positive")
        if not (0 <= self.p < self.q):
            raise DomainError("Farey numerator must satisfy 0 <= p < q")
        if gcd(self.p, self.q) != 1:
            raise DomainError(f"{self.p}/{self.q} is not reduced")

    @classmethod
    def from_value(cls, x) -> "FareyFraction":
        x = to_rational(x)
        k = floor_q(x)
        f = x - k
        return cls(f.numerator, f.denominator, k)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q) + self.k

    @property
    def order(self) -> int:
        return self.q

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "k": self.k}

    def __lt__(self, other: "FareyFraction") -> bool:
        return self.value < other.value

    def __le__(self, other: "FareyFraction") -> bool:
        return self.value <= other.value

    def __str__(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _ff(num: int, den: int) -> FareyFraction:
    k = num // den
    return FareyFraction(num - k * den, den, k)


def farey_pairs(n: int) -> Iterator[Tuple[int, int]]:
    """Yield (p, q) of the Farey sequence of order n in ascending order, 0/1 to 1/1."""
    if n < 1:
        raise DomainError("Farey order must be >= 1")
    a, b, c, d = 0, 1, 1, n
    yield a, b
    while c <= n:
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        yield a, b


def farey_sequence(n: int) -> List[FareyFraction]:
    """Reduced fractions in [0, 1) with denominator <= n, followed by 1/1."""
    return [_ff(p, q) for p, q in farey_pairs(n)]


def mediant(x: FareyFraction, y: FareyFraction) -> FareyFraction:
    xv, yv = x.value, y.value
    if xv >= yv:
        raise OrderError(f"mediant needs x < y, got {x} >= {y}")
    num = xv.numerator + yv.numerator
    den = xv.denominator + yv.denominator
    g = gcd(num, den)
    return _ff(num // g, den // g)


def farey_bracket(x, n: int) -> Tuple[Fraction, Fraction]:
    """Consecutive elements l <= x < r of the translated Farey sequence of order n."""
    x = to_rational(x)
    if n < 1:
        raise DomainError("Farey order must be >= 1")
    k = floor_q(x)
    x0 = x - k
    X, Y = x0.numerator, x0.denominator
    a, b, c, d = 0, 1, 1, 1
    while b + d <= n:
        if (a + c) * Y <= X * (b + d):
            t = min((X * b - a * Y) // (c * Y - X * d), (n - b) // d)
            a, b = a + t * c, b + t * d
        else:
            gap = X * b - a * Y
            t = (n - d) // b
            if gap > 0:
                t = min(t, (c * Y - X * d - 1) // gap)
            c, d = c + t * a, d + t * b
    return Fraction(a, b) + k, Fraction(c, d) + k


def fractions_in(lo, hi, n: int) -> List[Fraction]:
    """All fractions with denominator <= n in the closed interval [lo, hi]."""
    lo, hi = to_rational(lo), to_rational(hi)
    if hi < lo:
        return []
    left, right = farey_bracket(lo, n)
    a, b = left.numerator, left.denominator
    c, d = right.numerator, right.denominator
    out = []
    if left >= lo:
        out.append(left)
    while Fraction(c, d) <= hi:
        out.append(Fraction(c, d))
        t = (n + b) // d
        a, b, c, d = c, d, t * c - a, t * d - b
    return out


def _simplest_in(lo: Fraction, hi: Fraction) -> Tuple[int, int, int, int, int, int]:
    """Least-denominator fraction in [lo, hi] (no integer inside, diam < 1).

    Returns (P, q, A, b, C, d): the fraction P/q and its neighbours A/b, C/d in
    the Farey sequence of order q, all in global form.
    """
    k = floor_q(lo)
    u, v = lo - k, hi - k
    Un, Ud = u.numerator, u.denominator
    Vn, Vd = v.numerator, v.denominator
    a, b, c, d = 0, 1, 1, 1
    while True:
        mn, md = a + c, b + d
        if mn * Ud < Un * md:
            t = (Un * b - a * Ud - 1) // (c * Ud - Un * d)
            a, b = a + t * c, b + t * d
        elif mn * Vd > Vn * md:
            t = (c * Vd - Vn * d - 1) // (Vn * b - a * Vd)
            c, d = c + t * a, d + t * b
        else:
            return mn + k * md, md, a + k * b, b, c + k * d, d


def _check_short(I: Interval) -> None:
    if not 0 < I.diam < 1:
        raise DomainError("interval must satisfy 0 < diam < 1")


def minimal_order_farey_element(I: Interval) -> Tuple[FareyFraction, int]:
    """The unique element of least order in I, and that order."""
    _check_short(I)
    n = ceil_q(I.lo)
    if n <= I.hi:
        return FareyFraction(0, 1, n), 1
    P, q, *_ = _simplest_in(I.lo, I.hi)
    return _ff(P, q), q


def farey_neighbours(x: FareyFraction) -> Tuple[Fraction, Fraction]:
    """Neighbours of x in the translated Farey sequence of order x.q."""
    if x.q == 1:
        return Fraction(x.k - 1), Fraction(x.k + 1)
    p, q = x.p, x.q
    inv = pow(p, -1, q)
    # p*b - a*q = 1 and c*q - p*d = 1
    b = inv
    a = (p * b - 1) // q
    d = q - inv
    c = (p * d + 1) // q
    return Fraction(a, b) + x.k, Fraction(c, d) + x.k


@dataclass(frozen=True)
class HalfFareyPartition:
    """Mediant chains flanking the minimal-order element of an interval."""

    anchor: FareyFraction
    left_neighbour: Fraction
    right_neighbour: Fraction
    l: Fraction
    r: Fraction
    cover: Interval

    @property
    def q(self) -> int:
        return self.anchor.q

    @property
    def n_left(self) -> int:
        return ceil_q(self.l)

    @property
    def n_right(self) -> int:
        return ceil_q(self.r)

    def left_element(self, j: int) -> Fraction:
        A, b = self.left_neighbour.numerator, self.left_neighbour.denominator
        P, q = self.anchor.value.numerator, self.q
        return Fraction(j * A + P, j * b + q)

    def right_element(self, j: int) -> Fraction:
        C, d = self.right_neighbour.numerator, self.right_neighbour.denominator
        P, q = self.anchor.value.numerator, self.q
        return Fraction(P + j * C, q + j * d)

    def _guard(self) -> None:
        if self.n_left + self.n_right > MAX_CHAIN:
            raise FeasibilityError("half Farey partition too long to list")

    @property
    def left_chain(self) -> List[FareyFraction]:
        self._guard()
        return [FareyFraction.from_value(self.left_element(j)) for j in range(self.n_left, 0, -1)]

    @property
    def right_chain(self) -> List[FareyFraction]:
        self._guard()
        return [FareyFraction.from_value(self.right_element(j)) for j in range(1, self.n_right + 1)]

    def elements(self) -> List[FareyFraction]:
        """Ascending merge of the left chain, the anchor and the right chain."""
        return self.left_chain + [self.anchor] + self.right_chain

    def elements_in(self, lo: Fraction, hi: Fraction) -> List[Fraction]:
        """Partition elements inside [lo, hi], found by bisection on the chain index."""
        out = []
        # left chain decreases in j, right chain increases in j
        jl = _first_index(1, self.n_left, lambda j: self.left_element(j) < lo)
        jh = _first_index(1, self.n_left, lambda j: self.left_element(j) <= hi)
        for j in range(jl - 1, jh - 1, -1):
            out.append(self.left_element(j))
        g = self.anchor.value
        if lo <= g <= hi:
            out.append(g)
        jl = _first_index(1, self.n_right, lambda j: self.right_element(j) >= lo)
        jh = _first_index(1, self.n_right, lambda j: self.right_element(j) > hi)
        for j in range(jl, jh):
            out.append(self.right_element(j))
        return out


def _first_index(lo: int, hi: int, pred) -> int:
    """Least j in [lo, hi] with pred(j) true, for monotone pred; hi + 1 if none."""
    a, b = lo, hi + 1
    while a < b:
        m = (a + b) // 2
        if pred(m):
            b = m
        else:
            a = m + 1
    return a


def half_farey_partition(I: Interval) -> HalfFareyPartition:
    anchor, q = minimal_order_farey_element(I)
    left, right = farey_neighbours(anchor)
    l = Fraction(q, left.denominator)
    r = Fraction(q, right.denominator)
    part = HalfFareyPartition(anchor, left, right, l, r, Interval(0, 0))
    lo = part.left_element(part.n_left)
    hi = part.right_element(part.n_right)
    return HalfFareyPartition(anchor, left, right, l, r, Interval.from_endpoints(lo, hi))


@dataclass(frozen=True)
class FareyHalfInterval:
    anchor: FareyFraction
    L: Fraction
    R: Fraction
    interval: Interval


def farey_half_interval(I: Interval, anchor: Optional[FareyFraction] = None) -> FareyHalfInterval:
    if anchor is None:
        anchor, _ = minimal_order_farey_element(I)
    else:
        _check_short(I)
    g = anchor.value
    L = g - I.lo
    R = I.hi - g
    return FareyHalfInterval(anchor, L, R, Interval.from_endpoints(g - L / 2, g + R / 2))
