"""Finite-depth diagnostics for Bad(delta) and Dir(delta).

A real number is given either exactly as a rational or as a finite list of
partial quotients. A truncated expansion stands for any real sharing those
leading terms, so it carries an enclosure radius: the distance between its
last two convergents. Verdicts that survive every point of the enclosure
are flagged certain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .arith import ceil_q, floor_q, to_rational
from .errors import DomainError

RATIONAL = "rational"
CF_TERMS = "cf_terms"


def continued_fraction(x) -> List[int]:
    """Partial quotients by the Euclidean algorithm (last term >= 2 unless x is an integer)."""
    x = to_rational(x)
    p, q = x.numerator, x.denominator
    terms = []
    while True:
        a, r = divmod(p, q)
        terms.append(a)
        if r == 0:
            return terms
        p, q = q, r


def convergents(terms: Sequence[int]) -> List[Fraction]:
    if not terms:
        raise DomainError("empty continued fraction")
    for a in terms[1:]:
        if a < 1:
            raise DomainError("partial quotients after the first must be positive")
    out = []
    p0, q0, p1, q1 = 1, 0, terms[0], 1
    out.append(Fraction(p1, q1))
    for a in terms[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def evaluate(terms: Sequence[int]) -> Fraction:
    return convergents(terms)[-1]


@dataclass(frozen=True)
class RealSpec:
    kind: str
    value: object

    def __post_init__(self):
        if self.kind == RATIONAL:
            object.__setattr__(self, "value", to_rational(self.value))
        elif self.kind == CF_TERMS:
            terms = tuple(int(a) for a in self.value)
            convergents(terms)
            object.__setattr__(self, "value", terms)
        else:
            raise DomainError(f"unknown real kind {self.kind!r}")

    @classmethod
    def rational(cls, x) -> "RealSpec":
        return cls(RATIONAL, x)

    @classmethod
    def cf(cls, terms: Sequence[int]) -> "RealSpec":
        return cls(CF_TERMS, tuple(terms))

    @property
    def point(self) -> Fraction:
        return self.value if self.kind == RATIONAL else evaluate(self.value)

    @property
    def enclosure(self) -> Fraction:
        """Radius around ``point`` that contains every real with these leading terms."""
        if self.kind == RATIONAL:
            return Fraction(0)
        cs = convergents(self.value)
        if len(cs) < 2:
            return Fraction(1)
        return abs(cs[-1] - cs[-2])


def as_real(x) -> RealSpec:
    if isinstance(x, RealSpec):
        return x
    return RealSpec.rational(x)


@dataclass(frozen=True)
class Witness:
    p: int
    q: int
    certain: bool

    @property
    def pair(self) -> Tuple[int, int]:
        return self.p, self.q


def _candidates(x: Fraction, q: int, reach: Fraction) -> range:
    """Numerators p with |x - p/q| <= reach."""
    return range(ceil_q((x - reach) * q), floor_q((x + reach) * q) + 1)


def dir_witnesses_detailed(x, delta, q_max: int) -> List[Witness]:
    """Reduced p/q with q <= q_max and |x - p/q| < delta/q^2, with certainty flags."""
    x = as_real(x)
    delta = to_rational(delta)
    if q_max < 1:
        raise DomainError("q_max must be positive")
    if delta <= 0:
        raise DomainError("delta must be positive")
    v, e = x.point, x.enclosure
    out = []
    for q in range(1, q_max + 1):
        bound = delta / (q * q)
        for p in _candidates(v, q, bound):
            if gcd(p, q) != 1:
                continue
            dist = abs(v - Fraction(p, q))
            if dist < bound:
                out.append(Witness(p, q, dist + e < bound))
    return out


def dir_witnesses(x, delta, q_max: int) -> List[Tuple[int, int]]:
    return [w.pair for w in dir_witnesses_detailed(x, delta, q_max)]


@dataclass(frozen=True)
class BadVerdict:
    ok: bool
    certain: bool
    violations: List[Tuple[int, int]]


def bad_report(x, delta, Q: int, q_max: int) -> BadVerdict:
    """All reduced p/q with Q <= q <= q_max and |x - p/q| < delta/q^2.

    Only numerators within delta/q^2 + enclosure of x are examined; distance
    is monotone in p on each side of x so nothing else can qualify. The
    verdict is certain when no fraction is within the enclosure of the
    threshold.
    """
    x = as_real(x)
    delta = to_rational(delta)
    if Q < 1 or q_max < Q:
        raise DomainError("need 1 <= Q <= q_max")
    if delta <= 0:
        raise DomainError("delta must be positive")
    v, e = x.point, x.enclosure
    violations = []
    certain = True
    for q in range(Q, q_max + 1):
        bound = delta / (q * q)
        for p in _candidates(v, q, bound + e):
            if gcd(p, q) != 1:
                continue
            dist = abs(v - Fraction(p, q))
            if dist < bound:
                violations.append((p, q))
                if dist + e >= bound:
                    certain = False
            elif dist - e < bound:
                certain = False
    return BadVerdict(not violations, certain, violations)


def bad_check(x, delta, Q: int, q_max: int) -> bool:
    """True iff |x - p/q| >= delta/q^2 for every reduced p/q with Q <= q <= q_max."""
    return bad_report(x, delta, Q, q_max).ok
