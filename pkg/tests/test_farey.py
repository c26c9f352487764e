import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from conftest import short_intervals
from fareygame.arith import Interval
from fareygame.errors import DomainError, OrderError
from fareygame.farey import (
    FareyFraction,
    farey_bracket,
    farey_half_interval,
    farey_neighbours,
    farey_sequence,
    fractions_in,
    half_farey_partition,
    mediant,
    minimal_order_farey_element,
)
from oracles import farey_scan, fractions_in_scan, min_order_scan, neighbours_scan

F = Fraction


def values(seq):
    return [x.value for x in seq]


def test_sequence_examples():
    assert values(farey_sequence(1)) == [0, 1]
    assert values(farey_sequence(4)) == [0, F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4), 1]
    assert len(farey_sequence(5)) == 11
    with pytest.raises(DomainError):
        farey_sequence(0)


@pytest.mark.parametrize("n", range(1, 40))
def test_sequence_matches_scan(n):
    assert values(farey_sequence(n)) == farey_scan(n)


def test_fraction_validation():
    with pytest.raises(DomainError):
        FareyFraction(2, 4)
    with pytest.raises(DomainError):
        FareyFraction(3, 2)
    assert FareyFraction.from_value(F(-7, 3)) == FareyFraction(2, 3, -3)
    assert FareyFraction(0, 1, 5).value == 5


def test_mediant_examples():
    ff = FareyFraction.from_value
    assert mediant(ff(0), ff(1)).value == F(1, 2)
    assert mediant(ff(F(1, 3)), ff(F(1, 2))).value == F(2, 5)
    assert mediant(ff(F(2, 5)), ff(F(1, 2))).value == F(3, 7)
    with pytest.raises(OrderError):
        mediant(ff(F(1, 2)), ff(F(1, 3)))


@pytest.mark.parametrize("n", [1, 2, 7, 30, 101])
def test_consecutive_pair_identity(n):
    seq = values(farey_sequence(n))
    for x, y in zip(seq, seq[1:]):
        assert y - x == F(1, x.denominator * y.denominator)


@given(st.fractions(-20, 20, max_denominator=400), st.integers(1, 60))
def test_bracket_is_consecutive(x, n):
    lo, hi = farey_bracket(x, n)
    assert lo <= x < hi
    assert lo.denominator <= n and hi.denominator <= n
    assert hi - lo == F(1, lo.denominator * hi.denominator)


@given(short_intervals(60), st.integers(1, 25))
def test_fractions_in_matches_scan(iv, n):
    lo, hi = iv
    assert fractions_in(lo, hi, n) == fractions_in_scan(lo, hi, n)


def test_minimal_order_examples():
    assert minimal_order_farey_element(Interval(0, F(1, 4))) == (FareyFraction(0, 1, 0), 1)
    I = Interval.from_endpoints(F(3, 10), F(7, 20))
    assert minimal_order_farey_element(I) == (FareyFraction(1, 3), 3)
    I = Interval(F(2, 5), F(1, 100))
    assert minimal_order_farey_element(I) == (FareyFraction(2, 5), 5)


@pytest.mark.parametrize("lo, hi", [(0, 0), (0, 1), (0, 2)])
def test_minimal_order_rejects_bad_diameter(lo, hi):
    with pytest.raises(DomainError):
        minimal_order_farey_element(Interval.from_endpoints(lo, hi))


@given(short_intervals())
def test_minimal_order_matches_scan(iv):
    lo, hi = iv
    g, q = minimal_order_farey_element(Interval.from_endpoints(lo, hi))
    q0, hits = min_order_scan(lo, hi)
    assert q == q0 == g.q
    # uniqueness of the minimal-order element on a short interval
    assert hits == [g.value]


@given(short_intervals(), st.fractions(0, 1, max_denominator=100), st.fractions(0, 1, max_denominator=100))
def test_order_is_monotone_under_inclusion(iv, a, b):
    lo, hi = iv
    u, v = sorted((a, b))
    J_lo, J_hi = lo + u * (hi - lo), lo + v * (hi - lo)
    assume(J_lo < J_hi)
    gI, qI = minimal_order_farey_element(Interval.from_endpoints(lo, hi))
    gJ, qJ = minimal_order_farey_element(Interval.from_endpoints(J_lo, J_hi))
    assert qI <= qJ
    if qI == qJ:
        assert gI == gJ


@given(st.fractions(-10, 10, max_denominator=300))
def test_neighbours_match_scan(x):
    ff = FareyFraction.from_value(x)
    assert farey_neighbours(ff) == neighbours_scan(x)


def test_partition_examples():
    part = half_farey_partition(Interval(0, F(1, 4)))
    assert values(part.elements()) == [F(-1, 2), 0, F(1, 2)]

    I = Interval.from_endpoints(F(3, 10), F(7, 20))
    part = half_farey_partition(I)
    assert part.anchor.value == F(1, 3)
    assert (part.left_neighbour, part.right_neighbour) == (0, F(1, 2))
    assert (part.l, part.r) == (3, F(3, 2))
    elems = values(part.elements())
    assert elems == [F(1, 6), F(1, 5), F(1, 4), F(1, 3), F(2, 5), F(3, 7)]
    assert part.cover == Interval.from_endpoints(F(1, 6), F(3, 7))
    gap = F(1, 3) - F(1, 4)
    assert gap == F(1, 12) and F(1, 54) < gap < F(1, 9)


def check_partition(I):
    part = half_farey_partition(I)
    q = part.q
    elems = values(part.elements())
    assert len(part.left_chain) == part.n_left and len(part.right_chain) == part.n_right
    assert all(x < y for x, y in zip(elems, elems[1:]))
    for x, y in zip(elems, elems[1:]):
        assert F(1, 6 * q * q) < y - x < F(1, q * q)
    assert part.cover.contains(farey_half_interval(I).interval)
    assert part.elements_in(I.lo, I.hi) == [e for e in elems if I.lo <= e <= I.hi]
    return part


@given(short_intervals(120))
def test_partition_invariants(iv):
    lo, hi = iv
    I = Interval.from_endpoints(lo, hi)
    assume(minimal_order_farey_element(I)[1] <= 60)
    check_partition(I)


def half_lengths(part):
    g = part.anchor.value
    return g - part.cover.lo, part.cover.hi - g


@given(short_intervals(120))
def test_half_length_bounds(iv):
    lo, hi = iv
    I = Interval.from_endpoints(lo, hi)
    part = half_farey_partition(I)
    assume(part.anchor.p != 0 and part.q <= 60)
    left, right = half_lengths(part)
    q, b, d = part.q, part.left_neighbour.denominator, part.right_neighbour.denominator
    # strict when l, r are not integers; equality exactly when they are
    if part.l.denominator == 1:
        assert left == F(1, 2 * b * q)
    else:
        assert left > F(1, 2 * b * q)
    if part.r.denominator == 1:
        assert right == F(1, 2 * d * q)
    else:
        assert right > F(1, 2 * d * q)


def test_half_length_bound_is_attained_for_integer_l():
    part = half_farey_partition(Interval.from_endpoints(F(3, 10), F(7, 20)))
    left, right = half_lengths(part)
    assert part.l == 3
    assert left == F(1, 6) == F(1, 2 * 1 * 3)
    assert right > F(1, 2 * 2 * 3)


def test_half_interval_examples():
    h = farey_half_interval(Interval(3, F(1, 5)))
    assert h.interval == Interval(3, F(1, 10))

    I = Interval.from_endpoints(F(3, 10), F(7, 20))
    h = farey_half_interval(I)
    assert h.interval == Interval.from_endpoints(F(19, 60), F(41, 120))
    assert (h.L, h.R) == (F(1, 30), F(1, 60))
    assert h.interval.diam == F(1, 40) == I.diam / 2
    assert I.contains(h.interval)
    assert half_farey_partition(I).cover.contains(h.interval)


@given(short_intervals())
def test_half_interval_invariants(iv):
    lo, hi = iv
    I = Interval.from_endpoints(lo, hi)
    h = farey_half_interval(I)
    assert h.L + h.R == I.diam
    assert h.interval.diam == I.diam / 2
    assert I.contains(h.interval)
    assert h.interval.contains_point(h.anchor.value)


def test_seeded_intervals_have_bounded_gaps():
    rng = random.Random(3)
    for _ in range(200):
        c = F(rng.randrange(-4000, 4000), rng.randrange(1, 400))
        r = F(rng.randrange(1, 1000), 2000)
        I = Interval(c, r)
        if minimal_order_farey_element(I)[1] <= 50:
            check_partition(I)
