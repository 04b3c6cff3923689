from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import poly_from_roots
from zgraded.exact import (
    Frac,
    LaurentPoly,
    Poly,
    cauchy_root_bound,
    laurent_normalize,
    poly_gcd,
    poly_lcm,
    qq,
    rational_roots,
    resultant,
    root_bound,
    symbolic_p,
)
from zgraded.parsing import parse_poly

u = Poly.gen("u")


def P(text):
    return parse_poly(text)


def sylvester_det(a, b):
    """Resultant as the Sylvester determinant, eliminated over Fraction."""
    fa = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(a.c)]
    fb = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(b.c)]
    m, n = len(fa) - 1, len(fb) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fa + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + fb + [Fraction(0)] * (size - n - 1 - i))
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, size):
            f = rows[r][col] / rows[col][col]
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)
root_lists = st.lists(rationals, min_size=0, max_size=4)


def test_gcd_examples():
    assert poly_gcd(P("u^2 - 1"), P("u - 1")) == P("u - 1")
    assert poly_gcd(u, Poly((1,))) == Poly((1,))
    assert poly_gcd(P("u*(u-3)"), P("(u+3)*(u-3)")) == P("u - 3")


def test_gcd_of_zeros_raises():
    with pytest.raises(ValueError, match="gcd undefined"):
        poly_gcd(Poly(()), Poly(()))


def test_gcd_with_zero_is_monic_other():
    assert poly_gcd(Poly(()), P("2*u - 4")) == P("u - 2")


def test_resultant_examples():
    assert resultant(u, P("u + 3")) == 3
    assert resultant(P("u - 1"), P("u - 1")) == 0
    assert resultant(P("u^2 + 1"), P("u^2 + 4")) == 9


def test_resultant_zero_input():
    with pytest.raises(ValueError):
        resultant(Poly(()), u)


def test_cauchy_examples():
    assert cauchy_root_bound(P("u - 5")) == 6
    assert cauchy_root_bound(u) == 1
    assert cauchy_root_bound(P("2*u^2 - 8")) == 5
    with pytest.raises(ValueError):
        cauchy_root_bound(Poly((3,)))


def test_laurent_normalize_examples():
    k, core = laurent_normalize(LaurentPoly(P("u - 1"), -2))
    assert (k, core) == (-2, P("u - 1"))
    assert laurent_normalize(LaurentPoly(Poly((1,)), 3)) == (3, Poly((1,)))
    a = LaurentPoly.from_dict({-1: 1, 0: 1})
    assert laurent_normalize(a) == (-1, P("1 + u"))
    with pytest.raises(ValueError):
        laurent_normalize(LaurentPoly(Poly(())))


@settings(max_examples=60, deadline=None)
@given(root_lists, root_lists, root_lists)
def test_gcd_scales_by_common_factor(ra, rb, rc):
    a, b, c = poly_from_roots(ra), poly_from_roots(rb), poly_from_roots(rc)
    assert poly_gcd(a * c, b * c) == (c * poly_gcd(a, b)).monic()


@settings(max_examples=60, deadline=None)
@given(root_lists, root_lists)
def test_gcd_matches_root_multisets(ra, rb):
    # oracle: gcd of split polynomials is the product over common roots
    a, b = poly_from_roots(ra), poly_from_roots(rb)
    common = []
    left = list(rb)
    for r in ra:
        if r in left:
            left.remove(r)
            common.append(r)
    assert poly_gcd(a, b) == poly_from_roots(common)
    lcm = poly_lcm(a, b)
    assert a.divides(lcm) and b.divides(lcm)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-9, 9), min_size=2, max_size=6),
    st.lists(st.integers(-9, 9), min_size=2, max_size=6),
)
def test_resultant_matches_sylvester(ca, cb):
    a, b = Poly(ca), Poly(cb)
    if a.degree < 1 or b.degree < 1:
        return
    assert resultant(a, b) == sylvester_det(a, b)


@settings(max_examples=60, deadline=None)
@given(root_lists.filter(bool), root_lists.filter(bool))
def test_resultant_vanishes_iff_common_root(ra, rb):
    a, b = poly_from_roots(ra), poly_from_roots(rb)
    assert (resultant(a, b) == 0) == (poly_gcd(a, b).degree > 0)


@settings(max_examples=40, deadline=None)
@given(root_lists.filter(bool), st.integers(1, 3))
def test_root_bounds_cover_roots(ra, scale):
    a = poly_from_roots(ra) * scale
    bound = root_bound(a)
    assert bound <= cauchy_root_bound(a)
    assert all(abs(qq(r)) <= bound for r in ra)
    assert set(rational_roots(a)) == {qq(r) for r in ra}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), max_size=5), st.integers(-4, 4))
def test_laurent_normalize_round_trip(coeffs, k):
    core = Poly(coeffs)
    if not core:
        return
    a = LaurentPoly(core, k)
    e, c = laurent_normalize(a)
    assert c.coeff(0) != 0
    assert LaurentPoly(c, e) == a


@settings(max_examples=60, deadline=None)
@given(rationals, rationals)
def test_rational_arithmetic_exact(x, y):
    x, y = qq(x), qq(y)
    assert (x + y) - y == x


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(1, 4))
def test_symbolic_field_exact(a, b, k):
    p = symbolic_p()
    x = p ** k + a
    y = Frac(Poly((b, 1), "p"), Poly((1, 0, 1), "p"))
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert y.den.lc == 1


def test_poly_printing_is_canonical():
    assert str(P("(u-1)*(u-2)")) == "u^2 - 3*u + 2"
    assert str(P("u/3 + 1/2")) == "1/3*u + 1/2"
    assert str(Poly(())) == "0"


def test_taylor_shift():
    f = P("u^3 - 2*u + 5")
    for m in range(-3, 4):
        g = f.shift(m)
        for x in range(-3, 4):
            assert g(x) == f(x + m)
