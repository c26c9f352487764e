"""Dimension bounds, hole counts and the one-dimensional cover construction.

Inequalities between the counting quantities are decided in exact integer
or rational arithmetic. Logarithms are evaluated only for reporting, with
the ``decimal`` module at a configurable number of significant digits.
"""

from __future__ import annotations

import bisect
import decimal
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .arith import BallD, Interval, ceil_q, floor_q, int_root_floor, to_rational
from .errors import DomainError, FeasibilityError
from .game import GameParams, centered
from .strategies import PhaseState, bob_move
from .tess import (
    CompleteTess,
    TessBlock,
    completion,
    is_representable,
    m_tessellation,
    maximal_tessellation,
    minimal_tessellation,
)

DEFAULT_PRECISION = 50
MAX_COVER_DEPTH = 4
INTEGER_BETA = "integer_beta"
GENERAL = "general"


# ---------------------------------------------------------------------------
# decimal logarithms

def _ctx(precision: int) -> decimal.Context:
    # every Decimal operation goes through this context, never the thread default
    return decimal.Context(prec=precision + 15)


def dlog(x, precision: int = DEFAULT_PRECISION) -> decimal.Decimal:
    """Natural log of a positive rational."""
    x = to_rational(x)
    if x <= 0:
        raise DomainError("log of a non-positive number")
    ctx = _ctx(precision)
    return ctx.subtract(ctx.ln(decimal.Decimal(x.numerator)), ctx.ln(decimal.Decimal(x.denominator)))


def _round(v: decimal.Decimal, precision: int) -> decimal.Decimal:
    return decimal.Context(prec=precision).plus(v)


def _div(a: decimal.Decimal, b: decimal.Decimal, precision: int) -> decimal.Decimal:
    return _ctx(precision).divide(a, b)


@dataclass(frozen=True)
class Bound:
    """A logarithmic quantity: its value, a closed-form expression and the precision."""

    value: decimal.Decimal
    expression: str
    precision: int

    def __float__(self) -> float:
        return float(self.value)

    def as_dict(self) -> dict:
        return {"value": str(self.value), "expression": self.expression, "precision": self.precision}


def _bound(num: decimal.Decimal, den: decimal.Decimal, expr: str, precision: int) -> Bound:
    return Bound(_round(_div(num, den, precision), precision), expr, precision)


def _zero(expr: str, precision: int) -> Bound:
    return Bound(_round(decimal.Decimal(0), precision), expr, precision)


# ---------------------------------------------------------------------------
# counting

@dataclass(frozen=True)
class BoundInputs:
    d: int
    s: int
    j: int
    beta: Fraction

    def __post_init__(self):
        b = to_rational(self.beta)
        object.__setattr__(self, "beta", b)
        if self.d < 1:
            raise DomainError("d must be a positive integer")
        if self.s < 1:
            raise DomainError("s must be a positive integer")
        if self.j < 2:
            raise DomainError("j must be at least 2")
        if not 0 < b <= Fraction(1, 2):
            raise DomainError("beta must lie in (0, 1/2]")

    def require_hypotheses(self) -> None:
        """The dimension bounds are stated for s >= d; the counts are not."""
        if self.s < self.d:
            raise DomainError("the bound needs s >= d")

    @property
    def inverse_beta_integral(self) -> bool:
        return (1 / self.beta).denominator == 1

    @property
    def outer_ratio(self) -> Fraction:
        """j^s beta^(-s-1): Alice cell radius over tessellation cell radius."""
        return Fraction(self.j) ** self.s / self.beta ** (self.s + 1)

    @property
    def inner_ratio(self) -> Fraction:
        """j^s beta^(-s): hole radius over tessellation cell radius."""
        return Fraction(self.j) ** self.s / self.beta ** self.s

    @property
    def scale(self) -> Fraction:
        """j^(s+1) beta^(-(s+1)): shrink factor of one cover level."""
        return Fraction(self.j) ** (self.s + 1) / self.beta ** (self.s + 1)


def hole_count(inputs: BoundInputs, variant: str = GENERAL) -> int:
    """Number of tessellation cells covering one annulus A minus B."""
    d = inputs.d
    if variant == INTEGER_BETA:
        if not inputs.inverse_beta_integral:
            raise DomainError("integer_beta variant needs 1/beta to be an integer")
        return (inputs.outer_ratio.numerator + 1) ** d - inputs.inner_ratio.numerator ** d
    if variant == GENERAL:
        return (ceil_q(inputs.outer_ratio) + 1) ** d - (floor_q(inputs.inner_ratio) - 1) ** d
    raise DomainError(f"unknown variant {variant!r}")


def aux_inequality_holds(inputs: BoundInputs) -> bool:
    """j^d * N_R < (j^(s+1) beta^(-(s+1)))^d, compared exactly."""
    inputs.require_hypotheses()
    lhs = inputs.j ** inputs.d * hole_count(inputs, GENERAL)
    return lhs < inputs.scale ** inputs.d


@dataclass(frozen=True)
class UpperBound:
    general: Bound
    integer_beta: Optional[Bound]

    @property
    def best(self) -> Bound:
        return self.integer_beta if self.integer_beta is not None else self.general


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def upper_bound_ubiq_losing(inputs: BoundInputs, precision: int = DEFAULT_PRECISION) -> UpperBound:
    """log(j^d N) / log(j^(s+1) beta^(-(s+1))) with N_R, and with N when 1/beta is integral."""
    inputs.require_hypotheses()
    d, j = inputs.d, inputs.j
    den = dlog(inputs.scale, precision)
    den_s = f"log({_frac_str(inputs.scale)})"

    def one(N: int) -> Bound:
        num = _ctx(precision).fma(d, dlog(j, precision), dlog(N, precision))
        return _bound(num, den, f"({d}*log({j}) + log({N}))/{den_s}", precision)

    general = one(hole_count(inputs, GENERAL))
    integer = one(hole_count(inputs, INTEGER_BETA)) if inputs.inverse_beta_integral else None
    return UpperBound(general, integer)


def lower_bound_winning(d: int, alpha, beta, precision: int = DEFAULT_PRECISION) -> Bound:
    """d log(floor(1/beta)) / (-log(alpha*beta)) for winning sets."""
    alpha, beta = to_rational(alpha), to_rational(beta)
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise DomainError("alpha and beta must lie in (0, 1)")
    if d < 1:
        raise DomainError("d must be positive")
    m = floor_q(1 / beta)
    expr = f"{d}*log({m})/log({_frac_str(1 / (alpha * beta))})"
    if m == 1:
        return _zero(expr, precision)
    num = _ctx(precision).multiply(d, dlog(m, precision))
    return _bound(num, dlog(1 / (alpha * beta), precision), expr, precision)


@dataclass(frozen=True)
class DeltaBounds:
    delta: Fraction
    lower: Optional[Bound]
    upper: Optional[Bound]
    upper_integer_case: Optional[Bound]
    empty: bool

    def as_dict(self) -> dict:
        def b(x):
            return None if x is None else x.as_dict()
        return {"delta": _frac_str(self.delta), "lower": b(self.lower), "upper": b(self.upper),
                "upper_integer_case": b(self.upper_integer_case), "empty": self.empty}


def bad_delta_bounds(delta, precision: int = DEFAULT_PRECISION) -> DeltaBounds:
    """Lower and upper bounds for dim Bad(delta).

    The lower bound needs delta < 1/18. The upper bounds are evaluated
    whenever their logarithms are defined (36/delta > 1 and a positive
    argument); ``empty`` flags 5 delta^2 >= 1, where Bad(delta) has no points.
    """
    delta = to_rational(delta)
    if delta <= 0:
        raise DomainError("delta must be positive")
    lower = None
    if delta < Fraction(1, 18):
        lower = _delta_lower(delta, precision)
    upper = upper_int = None
    if 36 / delta > 1:
        ctx = _ctx(precision)
        den = ctx.multiply(2, dlog(36 / delta, precision))
        arg = ceil_q(648 / delta ** 2) - floor_q(36 / delta) + 2
        if arg > 0:
            upper = _bound(ctx.add(dlog(2, precision), dlog(arg, precision)), den,
                           f"(log(2) + log({arg}))/(2*log({_frac_str(36 / delta)}))", precision)
        if (18 / delta).denominator == 1:
            inner = 1 - delta / 18 + delta ** 2 / 648
            if inner > 0:
                v = ctx.add(1, _div(dlog(inner, precision), den, precision))
                upper_int = Bound(_round(v, precision),
                                  f"1 + log({_frac_str(inner)})/(2*log({_frac_str(36 / delta)}))", precision)
    return DeltaBounds(delta, lower, upper, upper_int, 5 * delta ** 2 >= 1)


def _delta_lower(delta: Fraction, precision: int) -> Bound:
    m = floor_q(1 / (18 * delta))
    expr = f"log({m})/log({_frac_str(1 / (6 * delta))})"
    if m == 1:
        return _zero(expr, precision)
    return _bound(dlog(m, precision), dlog(1 / (6 * delta), precision), expr, precision)


def intersection_bound(n_translates: int, delta, precision: int = DEFAULT_PRECISION) -> Bound:
    """N log(floor((1/(18 delta 3^(N-1)))^(1/N))) / log(1/(6 delta))."""
    N = n_translates
    delta = to_rational(delta)
    if N < 1:
        raise DomainError("number of translates must be positive")
    if not 0 < delta < Fraction(1, 18 * 3 ** (N - 1)):
        raise DomainError("delta must satisfy 0 < delta < 3^(1-N)/18")
    m = int_root_floor(1 / (18 * delta * 3 ** (N - 1)), N)
    expr = f"{N}*log({m})/log({_frac_str(1 / (6 * delta))})"
    if m <= 1:
        return _zero(expr, precision)
    num = _ctx(precision).multiply(N, dlog(m, precision))
    return _bound(num, dlog(1 / (6 * delta), precision), expr, precision)


# ---------------------------------------------------------------------------
# parameter transfer

LOSING_INVARIANCE = "losing_invariance"
BIGGER_ALPHA = "bigger_alpha"
BILIPSCHITZ = "bilipschitz"


def param_transfer(alpha, beta, mode: str, alpha_prime=None, K=None, L=None) -> Tuple[Fraction, Fraction]:
    """Transferred game parameters.

    losing_invariance: (alpha', beta') with alpha'beta' = alpha beta and beta' <= beta.
    bigger_alpha: (alpha', alpha beta0 / alpha') for alpha' >= alpha.
    bilipschitz: (alpha K L, beta0 / (K L)); L defaults to K.
    """
    alpha, beta = to_rational(alpha), to_rational(beta)
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise DomainError("alpha and beta must lie in (0, 1)")
    if mode == LOSING_INVARIANCE or mode == BIGGER_ALPHA:
        if alpha_prime is None:
            raise DomainError(f"{mode} needs alpha'")
        ap = to_rational(alpha_prime)
        if not 0 < ap < 1:
            raise DomainError("alpha' must lie in (0, 1)")
        bp = alpha * beta / ap
        if mode == LOSING_INVARIANCE:
            if not bp < 1:
                raise DomainError(f"beta' = {_frac_str(bp)} is not below 1")
            if not bp <= beta:
                raise DomainError(f"beta' = {_frac_str(bp)} exceeds beta")
        else:
            if ap < alpha:
                raise DomainError("alpha' must be at least alpha")
        return ap, bp
    if mode == BILIPSCHITZ:
        if K is None:
            raise DomainError("bilipschitz needs K")
        K = to_rational(K)
        L = K if L is None else to_rational(L)
        if K <= 0 or L <= 0:
            raise DomainError("K and L must be positive")
        a2 = alpha * K * L
        b2 = beta / (K * L)
        if not a2 < 1:
            raise DomainError("alpha K L must be below 1")
        if not 0 < b2 < 1:
            raise DomainError("beta0/(K L) must lie in (0, 1)")
        return a2, b2
    raise DomainError(f"unknown transfer mode {mode!r}")


# ---------------------------------------------------------------------------
# cover construction on the line

@dataclass(frozen=True)
class CoverLevel:
    t: int
    cells: List[Interval]
    holes: List[Interval]
    cell_radius: Fraction
    variant: str
    per_hole: int


HOLE_STRATEGIES = ("farey", "centered")


def _hole(C: Interval, A: Interval, beta: Fraction, alpha: Fraction, strategy: str) -> Interval:
    """Bob's first answer to Alice's cell A when C is his first ball."""
    if strategy == "centered":
        return centered(A, beta)
    B, _, _, _ = bob_move(GameParams(alpha, beta), A, PhaseState())
    return B


def _annulus_cells(A: Interval, hole: Interval, inputs: BoundInputs, Rp: Fraction, variant: str) -> List[Interval]:
    """N (or N_R) cells of radius Rp covering A minus the interior of ``hole``."""
    Ab, Hb = BallD((A.center,), A.radius), BallD((hole.center,), hole.radius)
    if variant == INTEGER_BETA:
        K = inputs.inner_ratio.numerator
        tess = completion(Hb, K)
        ok, inner = is_representable(Hb, tess)
        assert ok
        outer_side = inputs.outer_ratio.numerator + 1
    else:
        tess = CompleteTess((hole.center,), Rp)
        inner = maximal_tessellation(Hb, tess)
        side = floor_q(inputs.inner_ratio) - 1
        inner = TessBlock(tess, inner.lo, tuple(a + side - 1 for a in inner.lo))
        outer_side = ceil_q(inputs.outer_ratio) + 1
    assert tess.cell_radius == Rp
    outer = minimal_tessellation(Ab, tess)
    pad = outer_side - outer.sides[0]
    if pad < 0:
        raise AssertionError("minimal cover larger than the counted side")
    outer = TessBlock(tess, tuple(a - pad for a in outer.lo), outer.hi)
    if not outer.contains_block(inner):
        raise AssertionError("inner block escapes the outer block")
    inner_cells = set(inner.cells())
    out = []
    for m in outer.cells():
        if m not in inner_cells:
            c = tess.cell(m)
            out.append(Interval(c.center[0], c.radius))
    return out


def build_cover_levels(B1: Interval, inputs: BoundInputs, depth: int,
                       variant: Optional[str] = None, hole_strategy: str = "farey") -> List[CoverLevel]:
    """Levels t = 1..depth of the cover construction on the line.

    Each cell C of level t-1 (level 0 is B1) is split into j Alice cells A;
    Bob's hole B in A is his first answer with C as initial ball. The
    annulus A minus B is covered by the outer tessellation block of A minus
    the inner block of B, both on a grid of radius
    rho(C) beta^(s+1) / j^(s+1).
    """
    if inputs.d != 1:
        raise FeasibilityError("the cover construction is implemented for d = 1")
    if not 1 <= depth <= MAX_COVER_DEPTH:
        raise FeasibilityError(f"depth must lie in 1..{MAX_COVER_DEPTH}")
    if hole_strategy not in HOLE_STRATEGIES:
        raise DomainError(f"unknown hole strategy {hole_strategy!r}")
    if variant is None:
        variant = INTEGER_BETA if inputs.inverse_beta_integral else GENERAL
    if variant == INTEGER_BETA and not inputs.inverse_beta_integral:
        raise DomainError("integer_beta variant needs 1/beta to be an integer")
    alpha = Fraction(1, inputs.j)
    if hole_strategy == "farey" and inputs.j != 2:
        raise DomainError("the Farey hole strategy plays alpha = 1/2, i.e. j = 2")
    beta = inputs.beta
    per_hole = hole_count(inputs, variant)
    levels = []
    cells = [B1]
    for t in range(1, depth + 1):
        new_cells: List[Interval] = []
        holes: List[Interval] = []
        Rp = cells[0].radius * beta ** (inputs.s + 1) / Fraction(inputs.j) ** (inputs.s + 1)
        for C in cells:
            for Ac in m_tessellation(BallD((C.center,), C.radius), inputs.j):
                A = Interval(Ac.center[0], Ac.radius)
                H = _hole(C, A, beta, alpha, hole_strategy)
                holes.append(H)
                ann = _annulus_cells(A, H, inputs, Rp, variant)
                assert len(ann) == per_hole
                new_cells.extend(ann)
        levels.append(CoverLevel(t, new_cells, holes, Rp, variant, per_hole))
        cells = new_cells
    return levels


# pieces of F_t are (lo, lo_closed, hi, hi_closed)
Piece = Tuple[Fraction, bool, Fraction, bool]


def _nonempty(lo, lc, hi, hc) -> bool:
    return lo < hi or (lo == hi and lc and hc)


def subtract_closed(pieces: Sequence[Piece], hole: Interval) -> List[Piece]:
    out = []
    for lo, lc, hi, hc in pieces:
        if hi < hole.lo or lo > hole.hi:
            out.append((lo, lc, hi, hc))
            continue
        if lo < hole.lo:
            out.append((lo, lc, hole.lo, False))
        if hole.hi < hi:
            out.append((hole.hi, False, hi, hc))
    return [p for p in out if _nonempty(*p)]


def remaining_set(B1: Interval, levels: Sequence[CoverLevel], t: int) -> List[Piece]:
    """F_t: B1 with every hole of levels 1..t removed, as sorted pieces."""
    pieces: List[Piece] = [(B1.lo, True, B1.hi, True)]
    for lev in levels[:t]:
        for h in sorted(lev.holes, key=lambda I: I.lo):
            pieces = subtract_closed(pieces, h)
    return sorted(pieces)


def merged(cells: Sequence[Interval]) -> List[Tuple[Fraction, Fraction]]:
    out: List[List[Fraction]] = []
    for c in sorted(cells, key=lambda I: I.lo):
        if out and c.lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], c.hi)
        else:
            out.append([c.lo, c.hi])
    return [(a, b) for a, b in out]


def covered_by(pieces: Sequence[Piece], cells: Sequence[Interval]) -> bool:
    """Closure of every piece lies in the union of the closed cells."""
    runs = merged(cells)
    starts = [a for a, _ in runs]
    for lo, _, hi, _ in pieces:
        i = bisect.bisect_right(starts, lo) - 1
        if i < 0 or runs[i][1] < hi:
            return False
    return True


def disjoint_from(pieces: Sequence[Piece], hole: Interval) -> bool:
    for lo, lc, hi, hc in pieces:
        if hi < hole.lo or lo > hole.hi:
            continue
        if hi == hole.lo and not hc:
            continue
        if lo == hole.hi and not lc:
            continue
        return False
    return True


def shifted_balls(B1: Interval) -> List[Interval]:
    """Balls of radius rho(B1) centred at the cells of the 3-tessellation of B1."""
    return [Interval(c.center[0], B1.radius) for c in m_tessellation(BallD((B1.center,), B1.radius), 3)]


def in_some_shifted_ball(B1: Interval, balls: Sequence[Interval]) -> bool:
    shifted = shifted_balls(B1)
    return all(any(S.contains(b) for S in shifted) for b in balls)


def box_count_exponent(level: CoverLevel, rho1, precision: int = DEFAULT_PRECISION) -> decimal.Decimal:
    """log |C_t| / log(rho1 / R'_t)."""
    rho1 = to_rational(rho1)
    v = _div(dlog(len(level.cells), precision), dlog(rho1 / level.cell_radius, precision), precision)
    return _round(v, precision)
