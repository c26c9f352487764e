from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fareygame.arith import Interval
from fareygame.errors import DomainError
from fareygame.farey import fractions_in
from fareygame.game import AccelSeq, CenteredStrategy, GameParams, run_game
from fareygame.strategies import (
    AliceStrategy,
    FareyBob,
    PhaseState,
    adversary,
    alice_move,
    alice_state,
    bob_move,
    certify_bad,
    extract_witnesses,
    record_denominators,
    window_bounds,
)
from oracles import bad_violations_scan

F = Fraction
ALICE_PARAMS = GameParams(F(1, 3), F(1, 2))
BOB_PARAMS = GameParams(F(1, 2), F(1, 2))


def test_alice_case_two_example():
    B1 = Interval.from_endpoints(F(1, 5), F(3, 5))
    state = alice_state(ALICE_PARAMS, B1)
    assert state.delta == F(1, 36) and state.Q == 1 and state.excluded_set == ()
    assert alice_move(state, B1, 1) == Interval.from_endpoints(F(1, 3), F(7, 15))


@pytest.mark.parametrize("offset, side", [(F(1, 40), 1), (F(-1, 40), -1)])
def test_alice_case_one_brackets(offset, side):
    B1 = Interval(F(1, 2) + offset, F(1, 20))
    state = alice_state(ALICE_PARAMS, B1)
    A = alice_move(state, B1, 1)
    r = B1.radius
    if side == 1:
        target = Interval.from_endpoints(F(1, 2) + r / 3, F(1, 2) + r)
    else:
        target = Interval.from_endpoints(F(1, 2) - r, F(1, 2) - r / 3)
    assert target.contains(A) and B1.contains(A)


def test_alice_is_centered_when_nothing_is_near():
    B1 = Interval(F(1, 2) + F(1, 7), F(1, 100))
    state = alice_state(ALICE_PARAMS, B1)
    assert alice_move(state, B1, 1) == Interval(B1.center, B1.radius / 3)


def test_alice_state_preconditions():
    with pytest.raises(DomainError):
        alice_state(GameParams(F(1, 2), F(1, 2)), Interval(0, F(1, 4)))
    with pytest.raises(DomainError):
        alice_state(ALICE_PARAMS, Interval(0, 1))
    state = alice_state(ALICE_PARAMS, Interval(0, F(1, 4)))
    with pytest.raises(DomainError):
        alice_move(state, Interval(0, F(1, 8)), 1)


def test_excluded_set_listing():
    # ab/(2 rho) = 1/6 * 50 = 25/3, so Q = 3 and the set holds q <= 2
    state = alice_state(ALICE_PARAMS, Interval(0, F(1, 100)))
    assert state.Q == 3
    assert [f.value for f in state.excluded_set] == [0, F(1, 2)]


@given(st.fractions(F(1, 10**6), F(1, 2), max_denominator=10**6), st.fractions(-3, 3, max_denominator=50))
def test_window_fractions_are_separated(r, x):
    lo, hi = window_bounds(F(1, 6), r)
    qs = [q for q in range(1, 1200) if lo <= q * q < hi]
    if not qs:
        return
    near = [f for f in fractions_in(x - 20 * r, x + 20 * r, qs[-1]) if f.denominator >= qs[0]]
    for a, b in zip(near, near[1:]):
        assert b - a > 2 * r


def test_certify_example():
    B1 = Interval.from_endpoints(F(1, 5), F(3, 5))
    play = run_game(ALICE_PARAMS, AccelSeq(), adversary("random", 1), AliceStrategy(), 5, start=B1)
    cert = certify_bad(play)
    assert cert.q_bound == 23 and cert.ok and cert.Q == 1


def test_certify_depth_one_is_vacuous():
    B1 = Interval(F(1, 3), F(1, 5))
    play = run_game(ALICE_PARAMS, AccelSeq(), CenteredStrategy(), AliceStrategy(), 1, start=B1)
    cert = certify_bad(play)
    assert cert.ok and cert.q_bound == cert.Q - 1


def test_certify_detects_a_violation():
    B1 = Interval(F(1, 2), F(1, 5))
    play = run_game(ALICE_PARAMS, AccelSeq(), CenteredStrategy(), CenteredStrategy(), 5, start=B1)
    cert = certify_bad(play)
    assert not cert.ok and (1, 2) in cert.violations


@pytest.mark.parametrize("kind", ["random", "target_rational", "avoid_anchor"])
@pytest.mark.parametrize("seed", range(5))
def test_alice_beats_adversaries(kind, seed):
    start = Interval(F(seed, 7), F(1, 2 ** (seed + 1)))
    play = run_game(ALICE_PARAMS, AccelSeq(), adversary(kind, seed), AliceStrategy(), 20, start=start)
    for n in range(1, 21):
        prefix = run_game(ALICE_PARAMS, AccelSeq(), adversary(kind, seed), AliceStrategy(), n, start=start)
        assert prefix.bob_balls == play.bob_balls[:n]
        assert certify_bad(prefix).ok


def test_certificate_agrees_with_scan():
    start = Interval(F(2, 9), F(1, 64))
    play = run_game(ALICE_PARAMS, AccelSeq(), adversary("target_rational", 0, target=F(1, 4)), AliceStrategy(),
                    8, start=start)
    cert = certify_bad(play)
    Bn = play.bob_balls[-1]
    assert bad_violations_scan(Bn.lo, Bn.hi, F(1, 36), cert.Q, cert.q_bound) == []


def test_excluded_fractions_leave_second_ball():
    # Q >= 2: no fraction with q <= Q - 1 survives into B_2
    for seed in range(10):
        start = Interval(F(1, 2) + F(seed, 4096), F(1, 512))
        play = run_game(ALICE_PARAMS, AccelSeq(), adversary("target_rational", seed, target=F(1, 2)),
                        AliceStrategy(), 2, start=start)
        Q = alice_state(ALICE_PARAMS, start).Q
        assert Q >= 2
        B2 = play.bob_balls[1]
        assert fractions_in(B2.lo, B2.hi, Q - 1) == []


def test_bob_case_one_example():
    A1 = Interval(0, F(1, 8))
    B2, w, nxt, anchor = bob_move(BOB_PARAMS, A1, PhaseState())
    assert B2 == Interval(0, F(1, 16))
    assert w.nu.value == 0 and w.bound == 1 and w.holds()
    assert anchor.order == 1


def test_bob_parameter_checks():
    with pytest.raises(DomainError):
        bob_move(GameParams(F(1, 3), F(1, 2)), Interval(0, F(1, 8)), PhaseState())
    with pytest.raises(DomainError):
        bob_move(GameParams(F(1, 2), F(2, 3)), Interval(0, F(1, 8)), PhaseState())


def test_extract_single_witness():
    play = run_game(BOB_PARAMS, AccelSeq(), FareyBob(), CenteredStrategy(), 2, start=Interval(0, F(1, 4)))
    ws = extract_witnesses(play)
    assert len(ws) == 1 and not ws.best_effort
    w = ws[0]
    assert (w.step, w.nu.value, w.bound) == (1, 0, 1)


def test_anchors_stabilize_on_centered_alice():
    play = run_game(BOB_PARAMS, AccelSeq(), FareyBob(), CenteredStrategy(), 8, start=Interval(0, F(1, 4)))
    ws = extract_witnesses(play)
    assert ws.stabilized and ws.limit.value == 0


def check_bob_play(play):
    ws = extract_witnesses(play)
    assert not ws.best_effort
    for w in ws:
        assert w.holds()
        # in accelerated games the witness may sit on a virtual ball around B_n
        ball = play.bob_balls[w.ball_index - 1]
        assert w.ball.contains(ball)
        if not play.accel.terms:
            assert ball == w.ball
        q = w.anchor_order
        if w.kind == "anchor":
            assert w.bound == 2 * play.params.beta / q ** 2
        else:
            assert w.nu.q < 3 * q
            assert w.bound == 18 * play.params.beta / w.nu.q ** 2
    orders = [a.order for a in ws.anchors]
    assert orders == sorted(orders)
    return ws


@pytest.mark.parametrize("beta", [F(1, 4), F(1, 2)])
@pytest.mark.parametrize("seed", range(4))
def test_bob_witnesses_against_avoiding_alice(beta, seed):
    params = GameParams(F(1, 2), beta)
    play = run_game(params, AccelSeq(), FareyBob(), adversary("avoid_anchor", seed), 30, seed=seed)
    ws = check_bob_play(play)
    assert len(record_denominators(ws)) >= 3


@given(st.integers(0, 10**6), st.sampled_from([F(1, 4), F(1, 3), F(1, 2)]),
       st.lists(st.integers(0, 2), max_size=4))
def test_bob_witnesses_hold(seed, beta, accel):
    params = GameParams(F(1, 2), beta)
    play = run_game(params, AccelSeq(tuple(accel)), FareyBob(), adversary("random", seed), 12, seed=seed)
    check_bob_play(play)


def test_best_effort_extraction():
    play = run_game(BOB_PARAMS, AccelSeq(), CenteredStrategy(), CenteredStrategy(), 4, start=Interval(0, F(1, 4)))
    ws = extract_witnesses(play)
    assert ws.best_effort
    assert all(w.holds() for w in ws)


@pytest.mark.parametrize("kind", ["random", "target_rational", "avoid_anchor"])
def test_adversaries_are_deterministic(kind):
    def go():
        return run_game(BOB_PARAMS, AccelSeq(), adversary(kind, 11), adversary(kind, 12), 15, seed=3)
    assert go() == go()


def test_unknown_adversary():
    with pytest.raises(DomainError):
        adversary("clever", 0)


def test_target_rational_bob_still_loses_to_alice():
    for seed in range(5):
        play = run_game(ALICE_PARAMS, AccelSeq(), adversary("target_rational", seed, target=F(1, 2)),
                        AliceStrategy(), 30, seed=seed)
        assert certify_bad(play).ok
