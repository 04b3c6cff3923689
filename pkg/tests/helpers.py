"""Random inputs and brute-force oracles shared by the test modules.

The oracles here deliberately avoid the library's own orbit machinery:
roots come from explicit construction and orbit relations are decided with
Python's Fraction arithmetic.
"""

import random
from fractions import Fraction
from itertools import combinations

from zgraded.cycles import random_pleasantly_alternating
from zgraded.exact import Poly, qq
from zgraded.graded import GradedRingSpec
from zgraded.sigma import ADDITIVE, MULTIPLICATIVE, SigmaLine

ADD = SigmaLine(ADDITIVE)
MULT_PARAMS = ("2", "3", "1/2", "-2", "5/3")

DENOMS = (1, 2, 3, 4, 5, 7)


def linear(a, var="u"):
    return Poly((-qq(a), 1), var)


def poly_from_roots(roots, var="u"):
    out = Poly((1,), var)
    for a in roots:
        out = out * linear(a, var)
    return out


def rand_rational(rng, lo=-6, hi=6, nonzero=False):
    while True:
        x = Fraction(rng.randint(lo * 7, hi * 7), rng.choice(DENOMS))
        if x or not nonzero:
            return x


def is_power(ratio, p, limit=80):
    """ratio == p^i for some integer i (brute force over |i| <= limit)."""
    ratio, p = Fraction(ratio), Fraction(p)
    acc_up = acc_down = Fraction(1)
    for _ in range(limit + 1):
        if ratio in (acc_up, acc_down):
            return True
        acc_up *= p
        acc_down /= p
    return False


def same_orbit_oracle(kind, p, a, b):
    """Brute force: is b = sigma^i(a) for some i (i == 0 allowed)?"""
    a, b = Fraction(a), Fraction(b)
    if kind == ADDITIVE:
        return (b - a).denominator == 1
    if a == 0 or b == 0:
        return a == b
    return is_power(b / a, p)


def lonely_oracle(kind, p, roots):
    """Roots lonely iff no two distinct roots share an orbit (and for the
    multiplicative line, none is zero after removing u-powers)."""
    distinct = sorted(set(Fraction(r) for r in roots))
    if kind == MULTIPLICATIVE:
        distinct = [r for r in distinct if r != 0]
    for a, b in combinations(distinct, 2):
        if same_orbit_oracle(kind, p, a, b):
            return False
    return True


def random_ring(rng):
    if rng.random() < 0.5:
        return ADD
    return SigmaLine(MULTIPLICATIVE, rng.choice(MULT_PARAMS))


def random_lonely_roots(rng, ring, count):
    """``count`` roots on pairwise distinct orbits, built directly."""
    roots = []
    while len(roots) < count:
        x = rand_rational(rng, nonzero=ring.kind == MULTIPLICATIVE)
        if all(not same_orbit_oracle(ring.kind, ring.p, x, r) for r in roots):
            roots.append(x)
    return roots


def random_spec(rng, ring=None, max_span=4):
    """Lonely rational-root orbit, pleasantly alternating G, and h, j
    products of at most two factors of q."""
    ring = ring or random_ring(rng)
    roots = random_lonely_roots(rng, ring, rng.randint(1, 2))
    q = poly_from_roots(roots)
    h = poly_from_roots(rng.choices(roots, k=rng.randint(0, 2)))
    j = poly_from_roots(rng.choices(roots, k=rng.randint(0, 2)))
    G = random_pleasantly_alternating(rng, max_span)
    return GradedRingSpec(ring, q, G, h, j)


def seeded(seed):
    return random.Random(seed)
