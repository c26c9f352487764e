import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def rationals(min_value=None, max_value=None, max_denominator=500):
    for bound in (min_value, max_value):
        if bound is not None:
            max_denominator = max(max_denominator, Fraction(bound).denominator)
    return st.fractions(min_value=min_value, max_value=max_value, max_denominator=max_denominator)


def short_intervals(max_denominator=200):
    """Intervals with 0 < diam < 1 as (lo, hi)."""
    return st.tuples(
        rationals(-5, 5, max_denominator),
        rationals(Fraction(1, 10_000), Fraction(99, 100), max_denominator),
    ).map(lambda t: (t[0], t[0] + t[1]))
