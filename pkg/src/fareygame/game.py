"""Schmidt games and accelerated games on the real line.

In the accelerated game with sequence (s_n), Alice answers B_n with a ball
A_n inside it of radius alpha * rho(B_n), and Bob answers with B_{n+1}
inside A_n of radius beta * (alpha*beta)**s_n * rho(A_n). The plain game
is the all-zero sequence.

Strategies are positional: each move is a function of the opponent's last
ball, the move index and the required radius ratio.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .arith import Interval, fmt_rational, to_rational
from .errors import DomainError, NotAppendableError, NotInsertableError, StrategyFault

ALICE = "alice"
BOB = "bob"


@dataclass(frozen=True)
class GameParams:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = to_rational(self.alpha), to_rational(self.beta)
        if not (0 < a < 1 and 0 < b < 1):
            raise DomainError("game parameters must lie in (0, 1)")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def ab(self) -> Fraction:
        return self.alpha * self.beta


@dataclass(frozen=True)
class AccelSeq:
    """Acceleration sequence s_1, s_2, ... with an implicit zero tail."""

    terms: Tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.terms)
        if any(x < 0 for x in t):
            raise DomainError("acceleration terms must be non-negative")
        # trailing zeros carry no information
        while t and t[-1] == 0:
            t = t[:-1]
        object.__setattr__(self, "terms", t)

    def s(self, n: int) -> int:
        """The term s_n (1-based)."""
        if n < 1:
            raise DomainError("acceleration index starts at 1")
        return self.terms[n - 1] if n <= len(self.terms) else 0

    def partial(self, n: int) -> int:
        """Sum of (s_i + 1) for i = 1..n."""
        return sum(self.s(i) + 1 for i in range(1, n + 1))

    def prefix(self, n: int) -> List[int]:
        return [self.s(i) for i in range(1, n + 1)]

    @classmethod
    def plain(cls) -> "AccelSeq":
        return cls(())


def bob_ratio(params: GameParams, accel: AccelSeq, n: int) -> Fraction:
    """Radius ratio rho(B_{n+1}) / rho(A_n)."""
    return params.beta * params.ab ** accel.s(n)


@dataclass(frozen=True)
class Play:
    """Finite play: B_1 ⊃ A_1 ⊃ B_2 ⊃ A_2 ⊃ ...

    ``len(alice_balls)`` is either ``len(bob_balls)`` or one less.
    ``annotations`` holds strategy reports (for example Bob's witnesses).
    """

    params: GameParams
    accel: AccelSeq
    bob_balls: Tuple[Interval, ...]
    alice_balls: Tuple[Interval, ...]
    annotations: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def depth(self) -> int:
        return len(self.bob_balls)

    def last_ball(self) -> Interval:
        if len(self.alice_balls) == len(self.bob_balls):
            return self.alice_balls[-1]
        return self.bob_balls[-1]

    def with_annotations(self, **extra) -> "Play":
        ann = dict(self.annotations)
        ann.update(extra)
        return Play(self.params, self.accel, self.bob_balls, self.alice_balls, ann)


def validate_move(play: Play, proposed: Interval, mover: str) -> bool:
    """Check one proposed move against the rules, exactly."""
    nb, na = len(play.bob_balls), len(play.alice_balls)
    if mover == ALICE:
        if nb != na + 1:
            return False
        B = play.bob_balls[-1]
        return proposed.radius == play.params.alpha * B.radius and B.contains(proposed)
    if mover == BOB:
        if nb == 0:
            return proposed.radius > 0
        if nb != na:
            return False
        A = play.alice_balls[-1]
        ratio = bob_ratio(play.params, play.accel, na)
        return proposed.radius == ratio * A.radius and A.contains(proposed)
    raise DomainError(f"unknown mover {mover!r}")


def validate_play(play: Play) -> bool:
    """Replay every move of ``play`` through :func:`validate_move`."""
    nb, na = len(play.bob_balls), len(play.alice_balls)
    if nb == 0 or na not in (nb, nb - 1):
        return False
    partial = Play(play.params, play.accel, (), ())
    for i in range(nb):
        if not validate_move(partial, play.bob_balls[i], BOB):
            return False
        partial = Play(play.params, play.accel, partial.bob_balls + (play.bob_balls[i],), partial.alice_balls)
        if i < na:
            if not validate_move(partial, play.alice_balls[i], ALICE):
                return False
            partial = Play(play.params, play.accel, partial.bob_balls, partial.alice_balls + (play.alice_balls[i],))
    return True


class Strategy:
    """Base class for positional strategies.

    ``start`` is called once per game; ``move`` returns the next ball given
    the opponent's last ball, the index of the move being made and the
    required radius ratio.
    """

    def start(self, params: GameParams, accel: AccelSeq, role: str) -> None:
        self.params = params
        self.accel = accel
        self.role = role

    def move(self, ball: Interval, n: int, ratio: Fraction) -> Interval:
        raise NotImplementedError

    def report(self) -> Optional[dict]:
        return None


class FunctionStrategy(Strategy):
    def __init__(self, fn: Callable[[Interval, int, Fraction], Interval], name: str = "function"):
        self.fn = fn
        self.name = name

    def move(self, ball, n, ratio):
        return self.fn(ball, n, ratio)


def as_strategy(s) -> Strategy:
    if isinstance(s, Strategy):
        return s
    if callable(s):
        return FunctionStrategy(s)
    raise DomainError(f"not a strategy: {s!r}")


def centered(ball: Interval, ratio: Fraction) -> Interval:
    """The concentric ball of radius ratio * rho(ball)."""
    return Interval(ball.center, ratio * ball.radius)


class CenteredStrategy(Strategy):
    name = "centered"

    def move(self, ball, n, ratio):
        return centered(ball, ratio)


def random_start(seed: int) -> Interval:
    rng = random.Random(seed)
    center = Fraction(rng.randrange(-512, 513), 256)
    radius = Fraction(rng.randrange(1, 65), 64)
    return Interval(center, radius)


def run_game(params: GameParams, accel: AccelSeq, bob_strategy, alice_strategy,
             depth: int, seed: int = 0, start: Optional[Interval] = None) -> Play:
    """Play ``depth`` rounds and return B_1, A_1, ..., B_depth, A_depth.

    B_1 is ``start`` when given, otherwise drawn from ``seed``.
    """
    if depth < 1:
        raise DomainError("depth must be positive")
    bob, alice = as_strategy(bob_strategy), as_strategy(alice_strategy)
    B = start if start is not None else random_start(seed)
    bob.start(params, accel, BOB)
    alice.start(params, accel, ALICE)
    bobs: List[Interval] = []
    alices: List[Interval] = []

    def current():
        return Play(params, accel, tuple(bobs), tuple(alices))

    if not validate_move(current(), B, BOB):
        raise StrategyFault(BOB, 1, "initial ball")
    for n in range(1, depth + 1):
        bobs.append(B)
        A = alice.move(B, n, params.alpha)
        if not isinstance(A, Interval) or not validate_move(current(), A, ALICE):
            raise StrategyFault(ALICE, n, str(A))
        alices.append(A)
        if n == depth:
            break
        B = bob.move(A, n + 1, bob_ratio(params, accel, n))
        if not isinstance(B, Interval) or not validate_move(current(), B, BOB):
            raise StrategyFault(BOB, n + 1, str(B))
    ann = {}
    for role, strat in ((BOB, bob), (ALICE, alice)):
        rep = strat.report()
        if rep is not None:
            ann[role] = rep
    return Play(params, accel, tuple(bobs), tuple(alices), ann)


# ---------------------------------------------------------------------------
# play surgery

def canonical_alice(B: Interval, following: Interval, alpha: Fraction) -> Interval:
    """Alice ball in B of radius alpha*rho(B) containing ``following``.

    Concentric with ``following`` when that fits, else the leftmost valid one.
    """
    r = alpha * B.radius
    slack_in = B.radius - r
    slack_out = r - following.radius
    if slack_out < 0:
        raise DomainError("following ball is too large for an Alice ball")
    lo = max(following.center - slack_out, B.center - slack_in)
    hi = min(following.center + slack_out, B.center + slack_in)
    if lo > hi:
        raise DomainError("no Alice ball fits between the two Bob balls")
    c = following.center if lo <= following.center <= hi else lo
    return Interval(c, r)


def radius_exponent(play: Play, B: Interval) -> Optional[int]:
    """l >= 1 with rho(B) = rho(B_1) * (alpha*beta)**l, or None."""
    ratio = B.radius / play.bob_balls[0].radius
    ab = play.params.ab
    if ratio <= 0 or ratio >= 1:
        return None
    l, power = 1, ab
    while power > ratio:
        l += 1
        power *= ab
    return l if power == ratio else None


def insert_ball(play: Play, B: Interval) -> Tuple[Play, AccelSeq]:
    """Splice B between B_m and B_{m+1}; return the new play and its sequence."""
    k = play.depth
    bobs = play.bob_balls
    l = radius_exponent(play, B)
    if l is None:
        raise NotInsertableError("radius is not rho(B_1) times a positive power of alpha*beta")
    m = None
    for i in range(1, k):
        if bobs[i - 1].strictly_contains(B) and B.strictly_contains(bobs[i]):
            m = i
            break
    if m is None:
        raise NotInsertableError("no index m with B_m ⊋ B ⊋ B_(m+1)")
    s = play.accel
    below, upto = s.partial(m - 1), s.partial(m)
    if not below < l < upto:
        raise NotInsertableError("radius exponent does not fall strictly between B_m and B_(m+1)")
    n_terms = max(len(s.terms), k)
    old = s.prefix(n_terms)
    # m = 1 reduces to s~_1 = l - 1 and s~_2 = s_1 - l
    new = old[: m - 1] + [l - below - 1, upto - l - 1] + old[m:]
    accel = AccelSeq(tuple(new))
    alpha = play.params.alpha
    alices = list(play.alice_balls)
    new_bobs = list(bobs[:m]) + [B] + list(bobs[m:])
    new_alices = alices[: m - 1] + [canonical_alice(bobs[m - 1], B, alpha), canonical_alice(B, bobs[m], alpha)] + alices[m:]
    out = Play(play.params, accel, tuple(new_bobs), tuple(new_alices))
    return out, accel


def append_ball(play: Play, B: Interval, s_star: AccelSeq = AccelSeq()) -> Tuple[Play, AccelSeq]:
    """Append B after B_k, continuing with the sequence ``s_star``."""
    k = play.depth
    Bk = play.bob_balls[-1]
    l = radius_exponent(play, B)
    if l is None:
        raise NotAppendableError("radius is not rho(B_1) times a positive power of alpha*beta")
    if not Bk.strictly_contains(B):
        raise NotAppendableError("B is not strictly inside B_k")
    s = play.accel
    below = s.partial(k - 1)
    if not below < l:
        raise NotAppendableError("radius exponent does not exceed the accumulated sum")
    old = s.prefix(k - 1)
    new = old + [l - below - 1] + list(s_star.terms)
    accel = AccelSeq(tuple(new))
    alpha = play.params.alpha
    new_alices = list(play.alice_balls[: k - 1]) + [canonical_alice(Bk, B, alpha), centered(B, alpha)]
    out = Play(play.params, accel, play.bob_balls + (B,), tuple(new_alices))
    return out, accel


def restrict_play(play: Play, indices: Sequence[int]) -> Tuple[Play, AccelSeq]:
    """Keep the Bob balls at the given 1-based indices.

    The gap between consecutive kept indices i < i' becomes the term
    sum_{t=i}^{i'-1} (s_t + 1) - 1; after the last kept index the original
    sequence continues.
    """
    idx = list(indices)
    k = play.depth
    if not idx:
        raise DomainError("restriction needs at least one index")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise DomainError("restriction indices must be strictly ascending")
    if idx[0] < 1 or idx[-1] > k:
        raise DomainError("restriction index out of range")
    s = play.accel
    terms = [s.partial(j - 1) - s.partial(i - 1) - 1 for i, j in zip(idx, idx[1:])]
    terms += [s.s(n) for n in range(idx[-1], max(idx[-1], len(s.terms)) + 1)]
    accel = AccelSeq(tuple(terms))
    bobs = tuple(play.bob_balls[i - 1] for i in idx)
    alices = tuple(play.alice_balls[i - 1] for i in idx if i <= len(play.alice_balls))
    return Play(play.params, accel, bobs, alices), accel


def play_trace(play: Play) -> List[dict]:
    """JSON-ready move list."""
    out = []
    for n, B in enumerate(play.bob_balls, start=1):
        rec = {"move": n, "bob": ball_json(B)}
        if n <= len(play.alice_balls):
            rec["alice"] = ball_json(play.alice_balls[n - 1])
        rec["s_n"] = play.accel.s(n)
        out.append(rec)
    return out


def ball_json(I: Interval) -> dict:
    return {"center": fmt_rational(I.center), "radius": fmt_rational(I.radius)}
