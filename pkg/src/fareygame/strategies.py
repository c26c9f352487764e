"""Constructive strategies for the two players, and seeded adversaries.

Alice's strategy keeps the outcome inside Bad(alpha*beta/6): at move n she
steers away from every fraction whose denominator q satisfies
alpha*beta/(2 rho_n) <= q^2 < 1/(2 rho_n), where rho_n = rho(B_n). Those
fractions are more than 2 rho_n apart, so at most one of them meets B_n.

Bob's Farey strategy (alpha = 1/2, beta <= 1/2) forces the outcome close to
a sequence of rationals nu(m) with |x - nu(m)| < 18 beta / den(nu(m))^2.
Each recursion step starts from an Alice ball A, looks at its minimal-order
Farey element and either shrinks into the Farey half-interval of A or aims
at an element of the half Farey partition of A.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .arith import Interval, ceil_sqrt, floor_sqrt_strict, sqrt_window
from .errors import DomainError
from .farey import (
    FareyFraction,
    HalfFareyPartition,
    farey_half_interval,
    farey_pairs,
    fractions_in,
    half_farey_partition,
    minimal_order_farey_element,
)
from .game import ALICE, BOB, GameParams, Play, Strategy, centered

HALF = Fraction(1, 2)

# only list the excluded fractions explicitly when there are few of them
EXCLUDED_LIST_LIMIT = 200


def place(target: Interval, radius: Fraction, container: Interval,
          must_contain: Optional[Fraction] = None) -> Interval:
    """Ball of the given radius inside ``target`` and ``container``.

    Among valid centres, picks the one closest to the centre of ``target``
    (ties cannot occur on a line). ``must_contain`` adds a point constraint.
    """
    lo = max(target.lo, container.lo) + radius
    hi = min(target.hi, container.hi) - radius
    if must_contain is not None:
        lo = max(lo, must_contain - radius)
        hi = min(hi, must_contain + radius)
    if lo > hi:
        raise DomainError("no ball of this radius fits the placement constraints")
    c = min(max(target.center, lo), hi)
    return Interval(c, radius)


# ---------------------------------------------------------------------------
# Alice

@dataclass(frozen=True)
class AliceState:
    params: GameParams
    delta: Fraction
    rho: Fraction
    Q: int
    excluded_set: Tuple[FareyFraction, ...]

    @property
    def alpha(self) -> Fraction:
        return self.params.alpha

    @property
    def beta(self) -> Fraction:
        return self.params.beta


def alice_state(params: GameParams, B1: Interval) -> AliceState:
    if params.alpha > Fraction(1, 3):
        raise DomainError("Alice's strategy needs alpha <= 1/3")
    rho = B1.radius
    if not 0 < rho <= HALF:
        raise DomainError("rho(B_1) must lie in (0, 1/2]; reindex first")
    ab = params.ab
    Q = ceil_sqrt(ab / (2 * rho))
    excluded: Tuple[FareyFraction, ...] = ()
    if 1 < Q <= EXCLUDED_LIST_LIMIT:
        # representatives in [0, 1); the set is their integer translates
        excluded = tuple(FareyFraction(p, q) for p, q in farey_pairs(Q - 1) if p < q)
    return AliceState(params, ab / 6, rho, Q, excluded)


def excluded_in(state: AliceState, ball: Interval) -> List[Fraction]:
    """Members of the excluded set (denominator <= Q - 1) lying in ``ball``."""
    if state.Q < 2:
        return []
    return fractions_in(ball.lo, ball.hi, state.Q - 1)


def window_bounds(ab: Fraction, r: Fraction) -> Tuple[Fraction, Fraction]:
    """Squared window alpha*beta/(2r) <= q^2 < 1/(2r) for a Bob ball of radius r."""
    return ab / (2 * r), 1 / (2 * r)


def window_fractions(ab: Fraction, B: Interval, reach: Fraction) -> List[Fraction]:
    """Fractions with denominator in the window of B, within ``reach`` of B."""
    lo, hi = window_bounds(ab, B.radius)
    qs = sqrt_window(lo, hi)
    if not qs:
        return []
    near = fractions_in(B.lo - reach, B.hi + reach, qs[-1])
    return [f for f in near if f.denominator >= qs[0]]


def alice_move(state: AliceState, B: Interval, n: int) -> Interval:
    """Alice's answer A_n to Bob's ball B_n (indices after reindexing)."""
    ab = state.params.ab
    if n < 1 or B.radius != state.rho * ab ** (n - 1):
        raise DomainError(f"ball radius does not match move {n}")
    r, b = B.radius, B.center
    radius = state.alpha * r
    near = window_fractions(ab, B, r / 3)
    inside = [f for f in near if B.contains_point(f)]
    if len(inside) > 1:
        raise AssertionError("two window fractions inside one Bob ball")
    if inside:
        f = inside[0]
        if f <= b:
            target = Interval.from_endpoints(f + r / 3, f + r)
        else:
            target = Interval.from_endpoints(f - r, f - r / 3)
        return place(target, radius, B)
    left = [f for f in near if f < B.lo]
    right = [f for f in near if f > B.hi]
    eps = min(B.lo - max(left), r / 3) if left else r / 3
    eps_r = min(min(right) - B.hi, r / 3) if right else r / 3
    target = Interval.from_endpoints(b - 2 * r / 3 - eps, b + 2 * r / 3 + eps_r)
    if n == 1:
        hits = excluded_in(state, target)
        if hits:
            if hits[0] < b:
                target = Interval.from_endpoints(b + eps_r, b + 2 * r / 3 + eps_r)
            else:
                target = Interval.from_endpoints(b - 2 * r / 3 - eps, b - eps)
    return place(target, radius, B)


class AliceStrategy(Strategy):
    """Alice's Bad strategy with reindexing while rho(B) > 1/2."""

    name = "bad"

    def start(self, params, accel, role):
        super().start(params, accel, role)
        if role != ALICE:
            raise DomainError("this strategy is for Alice")
        if accel.terms:
            raise DomainError("Alice's strategy is defined for the plain game")
        self.state: Optional[AliceState] = None
        self.offset = 0

    def move(self, ball, n, ratio):
        if self.state is None:
            if ball.radius > HALF:
                return centered(ball, ratio)
            self.state = alice_state(self.params, ball)
            self.offset = n - 1
        return alice_move(self.state, ball, n - self.offset)

    def report(self):
        if self.state is None:
            return {"offset": None}
        return {"offset": self.offset, "rho": self.state.rho, "Q": self.state.Q}


@dataclass(frozen=True)
class Certificate:
    q_bound: int
    ok: bool
    violations: List[Tuple[int, int]] = field(default_factory=list)
    Q: int = 1
    first_index: int = 1


def first_small_index(play: Play) -> Optional[int]:
    """1-based index of the first Bob ball with radius <= 1/2."""
    for i, B in enumerate(play.bob_balls, start=1):
        if B.radius <= HALF:
            return i
    return None


def certify_bad(play: Play, delta: Optional[Fraction] = None) -> Certificate:
    """Check that no fraction with Q <= q <= q_bound comes within delta/q^2 of B_n.

    q_bound is the largest q with q^2 < (ab/(2 rho)) * ab^(-(n-1)), where n
    counts moves from the reindexed first ball. The q range is split into the
    per-move windows; within one window all fractions are more than twice
    the window radius apart, so each window needs only a Farey bracket.
    """
    params = play.params
    ab = params.ab
    if delta is None:
        delta = ab / 6
    start = first_small_index(play)
    if start is None:
        return Certificate(0, True, [], 0, 0)
    rho = play.bob_balls[start - 1].radius
    n = play.depth - start + 1
    Bn = play.bob_balls[-1]
    base = ab / (2 * rho)
    Q = ceil_sqrt(base)
    q_bound = floor_sqrt_strict(base / ab ** (n - 1))
    violations = []
    for k in range(1, n):
        lo = base / ab ** (k - 1)
        qs = sqrt_window(lo, lo / ab)
        if not qs:
            continue
        reach = delta / (qs[0] * qs[0])
        for f in fractions_in(Bn.lo - reach, Bn.hi + reach, qs[-1]):
            q = f.denominator
            if q >= qs[0] and Bn.dist_to_point(f) < delta / (q * q):
                violations.append((f.numerator, q))
    return Certificate(q_bound, not violations, violations, Q, start)


# ---------------------------------------------------------------------------
# Bob

@dataclass(frozen=True)
class BobWitness:
    """|x - nu| < bound for every x in ``ball``.

    In an accelerated game ``ball`` can be one of the virtual balls of move
    ``ball_index``; the actual B_n lies inside it.
    """

    step: int
    nu: FareyFraction
    ball_index: int
    bound: Fraction
    ball: Interval
    kind: str  # "anchor" (2 beta/q^2) or "partition" (18 beta/q'^2)
    anchor_order: int

    def holds(self) -> bool:
        return self.ball.max_dist_to_point(self.nu.value) < self.bound


@dataclass(frozen=True)
class Anchor:
    step: int
    value: FareyFraction
    order: int


@dataclass(frozen=True)
class PhaseState:
    """Pending commitments of Bob's strategy between moves."""

    phase: str = "start"  # start | descend | force
    step: int = 1
    partition: Optional[HalfFareyPartition] = None
    q: int = 0
    nu: Optional[Fraction] = None


def _check_bob_params(params: GameParams) -> None:
    if params.alpha != HALF or params.beta > HALF:
        raise DomainError("Bob's Farey strategy needs alpha = 1/2 and beta <= 1/2")


def _closest(values: List[Fraction], c: Fraction) -> Fraction:
    return min(values, key=lambda v: (abs(v - c), v))


def bob_move(params: GameParams, A: Interval, state: PhaseState,
             ball_index: int = 0) -> Tuple[Interval, Optional[BobWitness], PhaseState, Optional[Anchor]]:
    """One Bob move of ratio beta against Alice's ball A.

    Returns the new Bob ball, a witness when one is completed by this move,
    the next phase state and the anchor when a recursion step starts here.
    While Bob's current ball is larger than 1/2 he answers concentrically.
    """
    _check_bob_params(params)
    beta = params.beta
    rA = A.radius
    rB = beta * rA
    if state.phase == "start" and rA / params.alpha > HALF:
        return centered(A, beta), None, state, None

    if state.phase == "force":
        nu = state.nu
        if not A.contains_point(nu):
            raise DomainError("Alice's ball misses the forced rational")
        B = place(A, rB, A, must_contain=nu)
        w = BobWitness(state.step, FareyFraction.from_value(nu), ball_index,
                       18 * beta / nu.denominator ** 2, B, "partition", state.q)
        return B, w, PhaseState("start", state.step + 1), None

    if state.phase == "descend":
        q = state.q
        if rB < Fraction(2, q * q):
            return _aim(state.partition, A, rB, state.step, q)
        return centered(A, beta), None, state, None

    # start of a recursion step
    anchor, q = minimal_order_farey_element(A)
    mark = Anchor(state.step, anchor, q)
    g = anchor.value
    if rA < Fraction(1, q * q):
        half = farey_half_interval(A, anchor).interval
        B = place(half, rB, A, must_contain=g)
        w = BobWitness(state.step, anchor, ball_index, 2 * beta / (q * q), B, "anchor", q)
        return B, w, PhaseState("start", state.step + 1), mark
    part = half_farey_partition(A)
    if rB < Fraction(2, q * q):
        B, w, nxt, _ = _aim(part, A, rB, state.step, q)
        return B, w, nxt, mark
    half = farey_half_interval(A, anchor).interval
    B = place(half, rB, A)
    return B, None, PhaseState("descend", state.step, part, q), mark


def _aim(part: HalfFareyPartition, A: Interval, rB: Fraction, step: int, q: int):
    """Centre the next Bob ball on a partition element within rho(A)/2 of A's centre."""
    J = Interval(A.center, A.radius / 2)
    hits = part.elements_in(J.lo, J.hi)
    if not hits:
        raise AssertionError("no half Farey partition element near the centre of A")
    e = _closest(hits, A.center)
    return Interval(e, rB), None, PhaseState("force", step, part, q, e), None


class FareyBob(Strategy):
    """Bob's Farey strategy as a game strategy.

    In an accelerated game a move of ratio beta*(alpha*beta)^s is realized by
    s virtual rounds in which Bob also chooses Alice's balls (concentric),
    followed by one ordinary move.
    """

    name = "farey"

    def start(self, params, accel, role):
        super().start(params, accel, role)
        if role != BOB:
            raise DomainError("this strategy is for Bob")
        _check_bob_params(params)
        self.phase = PhaseState()
        self.witnesses: List[BobWitness] = []
        self.anchors: List[Anchor] = []

    def _step(self, A, n):
        B, w, self.phase, mark = bob_move(self.params, A, self.phase, n)
        if w is not None:
            self.witnesses.append(w)
        if mark is not None:
            self.anchors.append(mark)
        return B

    def move(self, ball, n, ratio):
        A = ball
        beta, ab = self.params.beta, self.params.ab
        s = 0
        while beta * ab ** s > ratio:
            s += 1
        if beta * ab ** s != ratio:
            raise DomainError("ratio is not of the form beta*(alpha*beta)^s")
        for _ in range(s):
            A = centered(self._step(A, n), self.params.alpha)
        return self._step(A, n)

    def report(self):
        return {"witnesses": list(self.witnesses), "anchors": list(self.anchors)}


class WitnessList(list):
    """List of witnesses plus extraction metadata."""

    best_effort: bool = False
    anchors: List[Anchor] = []
    stabilized: bool = False
    limit: Optional[FareyFraction] = None


STABLE_RUN = 3


def extract_witnesses(play: Play) -> WitnessList:
    """Witnesses recorded by :class:`FareyBob`, or a best-effort scan otherwise.

    ``stabilized`` is set when the last STABLE_RUN anchors coincide and the
    final ball still contains that rational.
    """
    rep = play.annotations.get(BOB) if play.annotations else None
    out = WitnessList()
    if rep is not None and "witnesses" in rep:
        out.extend(rep["witnesses"])
        out.anchors = list(rep["anchors"])
    else:
        out.best_effort = True
        out.anchors = []
        beta = play.params.beta
        for i, B in enumerate(play.bob_balls[1:], start=2):
            if not 0 < B.diam < 1:
                continue
            g, q = minimal_order_farey_element(B)
            bound = 18 * beta / (q * q)
            if B.max_dist_to_point(g.value) < bound:
                out.append(BobWitness(len(out) + 1, g, i, bound, B, "scan", q))
    anchors = out.anchors
    if len(anchors) >= STABLE_RUN:
        tail = {a.value for a in anchors[-STABLE_RUN:]}
        last = play.last_ball()
        if len(tail) == 1:
            v = anchors[-1].value
            if last.contains_point(v.value):
                out.stabilized = True
                out.limit = v
    return out


def record_denominators(witnesses) -> List[int]:
    """Denominators of witnesses that exceed every earlier witness denominator."""
    out: List[int] = []
    for w in witnesses:
        q = w.nu.q
        if not out or q > out[-1]:
            out.append(q)
    return out


# ---------------------------------------------------------------------------
# adversaries

ADVERSARY_KINDS = ("random", "target_rational", "avoid_anchor")


class Adversary(Strategy):
    """Seeded rule-abiding opponent usable by either player.

    random: uniform over a grid of ``grid`` + 1 admissible centres;
    target_rational: admissible centre closest to ``target``;
    avoid_anchor: admissible centre farthest from the minimal-order Farey
    element of the opponent's ball (ties to the smaller centre).
    """

    def __init__(self, kind: str, seed: int = 0, target=Fraction(1, 2), grid: int = 1024):
        if kind not in ADVERSARY_KINDS:
            raise DomainError(f"unknown adversary kind {kind!r}")
        self.kind = kind
        self.seed = seed
        self.target = Fraction(target)
        self.grid = grid
        self.name = kind
        self.rng = random.Random(seed)

    def start(self, params, accel, role):
        super().start(params, accel, role)
        self.rng = random.Random(self.seed)

    def move(self, ball, n, ratio):
        r = ratio * ball.radius
        slack = ball.radius - r
        lo, hi = ball.center - slack, ball.center + slack
        if self.kind == "random":
            i = self.rng.randrange(self.grid + 1)
            c = lo + (hi - lo) * Fraction(i, self.grid)
        elif self.kind == "target_rational":
            c = min(max(self.target, lo), hi)
        else:
            if 0 < ball.diam < 1:
                g = minimal_order_farey_element(ball)[0].value
            else:
                g = Fraction(round(ball.center))
            c = lo if abs(lo - g) >= abs(hi - g) else hi
        return Interval(c, r)


def adversary(kind: str, seed: int = 0, **kw) -> Adversary:
    return Adversary(kind, seed, **kw)
