"""Exact rational scalars, closed intervals and sup-norm balls.

Every quantity is a :class:`fractions.Fraction`. Square roots never appear:
comparisons against ``sqrt(r)`` are done on squares with integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def to_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction (floats refused)."""
    if isinstance(x, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise DomainError(f"cannot treat {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "n". Decimal notation is rejected to keep inputs exact."""
    s = text.strip()
    if not s:
        raise DomainError("empty rational")
    try:
        if "/" in s:
            num, den = s.split("/")
            n, d = int(num), int(den)
            if d == 0:
                raise DomainError(f"zero denominator in {text!r}")
            return Fraction(n, d)
        return Fraction(int(s))
    except ValueError:
        raise DomainError(f"not a rational of the form p/q or n: {text!r}") from None


def fmt_rational(x: Fraction) -> str:
    """Render as "p/q", or "n" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def floor_q(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_q(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def ceil_sqrt(r: RationalLike) -> int:
    """Least integer n with n**2 >= r."""
    r = to_rational(r)
    if r <= 0:
        raise DomainError(f"ceil_sqrt needs r > 0, got {fmt_rational(r)}")
    # n^2 >= a/b  <=>  n >= sqrt(a/b); start from isqrt of the ceiling.
    n = math.isqrt(ceil_q(r))
    while n * n < r:
        n += 1
    while n > 1 and (n - 1) * (n - 1) >= r:
        n -= 1
    return n


def floor_sqrt_strict(r: RationalLike) -> int:
    """Largest integer n >= 0 with n**2 < r (r > 0)."""
    r = to_rational(r)
    if r <= 0:
        raise DomainError("floor_sqrt_strict needs r > 0")
    return ceil_sqrt(r) - 1


def int_root_floor(x: RationalLike, n: int) -> int:
    """Largest integer m >= 0 with m**n <= x, for x >= 0."""
    x = to_rational(x)
    if n < 1:
        raise DomainError("root index must be positive")
    if x < 0:
        raise DomainError("int_root_floor needs x >= 0")
    f = floor_q(x)
    # m**n <= x  <=>  m**n <= floor(x) for integer m
    lo, hi = 0, 1
    while hi ** n <= f:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** n <= f:
            lo = mid
        else:
            hi = mid
    return lo


def in_sqrt_window(q: int, lo: RationalLike, hi: RationalLike) -> bool:
    """True iff lo <= q**2 < hi, i.e. sqrt(lo) <= q < sqrt(hi)."""
    lo, hi = to_rational(lo), to_rational(hi)
    if not 0 < lo < hi:
        raise DomainError("in_sqrt_window needs 0 < lo < hi")
    return lo <= q * q < hi


def sqrt_window(lo: Fraction, hi: Fraction) -> range:
    """All positive integers q with lo <= q**2 < hi."""
    first = ceil_sqrt(lo) if lo > 0 else 1
    last = floor_sqrt_strict(hi)
    return range(first, last + 1)


@dataclass(frozen=True)
class Interval:
    """Closed ball [center - radius, center + radius] on the real line."""

    center: Fraction
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", to_rational(self.center))
        object.__setattr__(self, "radius", to_rational(self.radius))
        if self.radius < 0:
            raise DomainError("interval radius must be non-negative")

    @classmethod
    def from_endpoints(cls, lo: RationalLike, hi: RationalLike) -> "Interval":
        lo, hi = to_rational(lo), to_rational(hi)
        if hi < lo:
            raise DomainError("interval endpoints out of order")
        return cls((lo + hi) / 2, (hi - lo) / 2)

    @property
    def lo(self) -> Fraction:
        return self.center - self.radius

    @property
    def hi(self) -> Fraction:
        return self.center + self.radius

    @property
    def diam(self) -> Fraction:
        return 2 * self.radius

    def contains_point(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def strictly_contains(self, other: "Interval") -> bool:
        """Proper containment of sets (``self`` is a strict superset)."""
        return self.contains(other) and self != other

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def dist_to_point(self, x: Fraction) -> Fraction:
        if x < self.lo:
            return self.lo - x
        if x > self.hi:
            return x - self.hi
        return Fraction(0)

    def max_dist_to_point(self, x: Fraction) -> Fraction:
        return max(abs(self.lo - x), abs(self.hi - x))

    def __str__(self) -> str:
        return f"[{fmt_rational(self.lo)}, {fmt_rational(self.hi)}]"


@dataclass(frozen=True)
class BallD:
    """Closed sup-norm ball in R^d: the product of [x_i - R, x_i + R]."""

    center: tuple
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(to_rational(c) for c in self.center))
        object.__setattr__(self, "radius", to_rational(self.radius))
        if self.radius <= 0:
            raise DomainError("ball radius must be positive")
        if not self.center:
            raise DomainError("ball needs at least one coordinate")

    @property
    def dim(self) -> int:
        return len(self.center)

    def axis(self, i: int) -> Interval:
        return Interval(self.center[i], self.radius)

    def contains(self, other: "BallD") -> bool:
        return all(self.axis(i).contains(other.axis(i)) for i in range(self.dim))

    def __str__(self) -> str:
        c = ",".join(fmt_rational(x) for x in self.center)
        return f"B(({c}); {fmt_rational(self.radius)})"


def rationals(values: Iterable[RationalLike]) -> tuple:
    return tuple(to_rational(v) for v in values)


def parse_rational_list(text: str, sep: str = ",") -> Sequence[Fraction]:
    return [parse_rational(t) for t in text.split(sep) if t.strip()]
