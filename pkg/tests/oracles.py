"""Brute-force reference implementations used only by the tests.

Each oracle is written from the definitions with plain loops and shares no
code with the package beyond Fraction.
"""

import itertools
from fractions import Fraction
from math import gcd


def ceil_sqrt_scan(r: Fraction) -> int:
    n = 0
    while n * n < r:
        n += 1
    return n


def farey_scan(n: int) -> list:
    """Reduced fractions in [0, 1] with denominator <= n, sorted."""
    vals = {Fraction(p, q) for q in range(1, n + 1) for p in range(0, q + 1)}
    return sorted(vals)


def min_order_scan(lo: Fraction, hi: Fraction):
    """First order q whose translated Farey sequence meets [lo, hi], and all hits."""
    q = 1
    while True:
        first = -((-lo.numerator * q) // lo.denominator)
        last = (hi.numerator * q) // hi.denominator
        hits = [Fraction(p, q) for p in range(first, last + 1) if gcd(p, q) == 1]
        if hits:
            return q, hits
        q += 1


def fractions_in_scan(lo: Fraction, hi: Fraction, n: int) -> list:
    out = set()
    for q in range(1, n + 1):
        first = -((-lo.numerator * q) // lo.denominator)
        last = (hi.numerator * q) // hi.denominator
        for p in range(first, last + 1):
            out.add(Fraction(p, q))
    return sorted(out)


def neighbours_scan(x: Fraction):
    """Closest fractions below and above x with denominator <= den(x), one b at a time."""
    q = x.denominator
    below, above = None, None
    for b in range(1, q + 1):
        lo = Fraction(-((-x.numerator * b) // x.denominator) - 1, b)
        hi = Fraction((x.numerator * b) // x.denominator + 1, b)
        below = lo if below is None or lo > below else below
        above = hi if above is None or hi < above else above
    return below, above


def continued_fraction_scan(x: Fraction) -> list:
    terms = []
    while True:
        a = x.numerator // x.denominator
        terms.append(a)
        frac = x - a
        if frac == 0:
            return terms
        x = 1 / frac


def dir_scan(x: Fraction, delta: Fraction, q_max: int) -> list:
    """Reduced (p, q) with q <= q_max and |x - p/q| < delta/q^2, by full scan of p."""
    out = []
    for q in range(1, q_max + 1):
        centre = (x.numerator * q) // x.denominator
        span = int(delta) + 2
        for p in range(centre - span, centre + span + 2):
            if gcd(p, q) == 1 and abs(x - Fraction(p, q)) < delta / (q * q):
                out.append((p, q))
    return sorted(set(out), key=lambda t: (t[1], t[0]))


def bad_violations_scan(lo: Fraction, hi: Fraction, delta: Fraction, q_from: int, q_to: int) -> list:
    """Reduced p/q, q_from <= q <= q_to, whose delta/q^2 ball meets [lo, hi]."""
    out = []
    for q in range(q_from, q_to + 1):
        eps = delta / (q * q)
        first = -((-(lo - eps).numerator * q) // (lo - eps).denominator)
        last = ((hi + eps).numerator * q) // (hi + eps).denominator
        for p in range(first - 1, last + 2):
            if gcd(p, q) != 1:
                continue
            v = Fraction(p, q)
            dist = lo - v if v < lo else (v - hi if v > hi else Fraction(0))
            if dist < eps:
                out.append((p, q))
    return out


def blocks_oracle(lo_edges, hi_edges, base, Rp, mode, margin=3):
    """Inclusion-extremal square blocks by exhaustive search.

    lo_edges/hi_edges are the per-axis ball ends. Cell m on axis i spans
    [(2m-1)R' + x'_i, (2m+1)R' + x'_i].
    """
    d = len(base)
    ranges = []
    for i in range(d):
        a = ((lo_edges[i] - base[i]) / (2 * Rp))
        b = ((hi_edges[i] - base[i]) / (2 * Rp))
        ranges.append((int(a // 1) - margin, int(b // 1) + margin))
    span = max(r[1] - r[0] + 1 for r in ranges)

    def edges(i, m):
        return (2 * m - 1) * Rp + base[i], (2 * m + 1) * Rp + base[i]

    found = []
    for M in range(1, span + 1):
        starts = [range(r[0], r[1] - M + 2) for r in ranges]
        for lo in itertools.product(*starts):
            good = True
            for i in range(d):
                left = edges(i, lo[i])[0]
                right = edges(i, lo[i] + M - 1)[1]
                if mode == "cover":
                    ok = left <= lo_edges[i] and hi_edges[i] <= right
                else:
                    ok = lo_edges[i] <= left and right <= hi_edges[i]
                if not ok:
                    good = False
                    break
            if good:
                found.append((tuple(lo), tuple(l + M - 1 for l in lo)))

    def inside(s, t):
        return all(t[0][i] <= s[0][i] and s[1][i] <= t[1][i] for i in range(d))

    out = []
    for s in found:
        if mode == "cover":
            if not any(t != s and inside(t, s) for t in found):
                out.append(s)
        else:
            if not any(t != s and inside(s, t) for t in found):
                out.append(s)
    return sorted(out)
