import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ADD, MULT_PARAMS, lonely_oracle, poly_from_roots, rand_rational
from zgraded.exact import Poly, qq, symbolic_p
from zgraded.lonely import (
    LonelyVerdict,
    MultiPoly,
    is_lonely,
    is_lonely_additive,
    is_lonely_multiplicative,
    is_lonely_points,
    is_lonely_poly,
    lattice_line_reduce,
    substitute_monomial,
    validate_witness,
)
from zgraded.parsing import parse_poly
from zgraded.sigma import ADDITIVE, CERTIFIED, MULTIPLICATIVE, WINDOWED, SigmaLine, TorusDescriptor

u = Poly.gen("u")


def P(text, var="u"):
    return parse_poly(text, var)


def T23(names=("x2", "x3")):
    return TorusDescriptor(2, ["2", "3"], names=list(names))


def test_additive_examples():
    v = is_lonely_additive(P("u*(u-3)"))
    assert not v.lonely and v.witness == {"shift": 3}
    assert is_lonely_additive(u).lonely
    assert is_lonely_additive(P("u^2 + 1")).lonely
    assert not is_lonely_additive(P("(u^2 + 1)*((u+2)^2 + 1)")).lonely
    with pytest.raises(ValueError):
        is_lonely_additive(P("7"))


def test_resultant_oracle_for_u2_plus_1():
    # Res(u^2 + 1, (u + n)^2 + 1) = n^2 (n^2 + 4): never zero for n != 0
    from zgraded.exact import resultant

    f = P("u^2 + 1")
    for n in range(1, 12):
        assert resultant(f, f.shift(n)) == n * n * (n * n + 4)


def test_multiplicative_examples():
    v = is_lonely_multiplicative(P("(z-1)*(z-2)", "z"), qq(2))
    assert not v.lonely and v.witness["shift"] == 1
    assert is_lonely_multiplicative(P("(z-1)*(z-3)", "z"), qq(2)).lonely
    for rho in ("2", "1/3", "-5"):
        assert is_lonely_multiplicative(P("z - 5", "z"), qq(rho)).lonely
    with pytest.raises(ValueError, match="normalize first"):
        is_lonely_multiplicative(P("z*(z-1)", "z"), qq(2))
    with pytest.raises(ValueError):
        is_lonely_multiplicative(P("z - 1", "z"), qq(-1))


def test_multiplicative_symbolic():
    p = symbolic_p()
    assert is_lonely_multiplicative(P("(z-1)*(z-2)", "z"), p).lonely
    f = Poly((-p ** 2, 1), "z") * P("z - 1", "z")
    v = is_lonely_multiplicative(f, p)
    assert not v.lonely and v.witness["shift"] == 2 and v.certificate == WINDOWED


def test_lattice_line_examples():
    names = ("x2", "x3")
    v, g = lattice_line_reduce(MultiPoly.from_expr("1 + x2*x3", names))
    assert v == (1, 1) and g == P("1 + z", "z")
    assert lattice_line_reduce(MultiPoly.from_expr("1 + x2 + x3", names)) is None
    f = MultiPoly.from_expr("1 + x2^2*x3^-2 + x2^4*x3^-4", names)
    v, g = lattice_line_reduce(f)
    assert v == (1, -1) and g == P("1 + z^2 + z^4", "z")
    assert substitute_monomial(g, v, 2) == f


@settings(max_examples=60, deadline=None)
@given(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any),
    st.dictionaries(st.integers(-3, 3), st.integers(-4, 4).filter(bool), min_size=2, max_size=4),
)
def test_lattice_line_round_trip(vec, coeffs):
    f = MultiPoly(2, {(e * vec[0], e * vec[1]): c for e, c in coeffs.items()})
    v, g = lattice_line_reduce(f)
    assert substitute_monomial(g, v, 2) == f.normalized()


def test_is_lonely_torus_examples():
    t = T23()
    v = is_lonely(t, "1 + x2 + x3")
    assert not v.lonely
    assert v.witness["shift"] == 1 and v.witness["point"] == [qq(-2), qq(1)]
    assert validate_witness(t, MultiPoly.from_expr("1 + x2 + x3", ("x2", "x3")), v)
    assert is_lonely(t, "1 + x2*x3").lonely
    ta = TorusDescriptor(1, [], has_additive_coordinate=True, names=["x1"])
    assert is_lonely(ta, "x1^2 + 1").lonely
    assert not is_lonely(ta, "x1*(x1 - 2)").lonely
    with pytest.raises(ValueError):
        is_lonely(t, MultiPoly(3, {(1, 0, 0): 1, (0, 0, 0): 1}))


def test_mixed_coordinates_not_lonely():
    t = TorusDescriptor(2, ["2"], has_additive_coordinate=True, names=["x1", "x2"])
    f = MultiPoly.from_expr("x1 + x2", ("x1", "x2"))
    v = is_lonely(t, f)
    assert not v.lonely and validate_witness(t, f, v)


def test_reduced_direction_witness():
    t = T23()
    # z = x2 x3, rho = 6: roots 1 and 6 of g lie on one orbit
    f = MultiPoly.from_expr("(1 - x2*x3)*(6 - x2*x3)", ("x2", "x3"))
    v = is_lonely(t, f)
    assert not v.lonely and v.witness["direction"] == [1, 1]
    assert validate_witness(t, f, v)


def test_points_examples():
    v = is_lonely_points(ADD, [u, P("u - 1")])
    assert not v.lonely and abs(v.witness["shift"]) == 1
    assert is_lonely_points(ADD, [u]).lonely
    B2 = SigmaLine(MULTIPLICATIVE, "2")
    assert is_lonely_points(B2, [P("u - 1"), P("u - 3")]).lonely
    assert not is_lonely_points(B2, [P("u - 1"), P("u - 4")]).lonely
    with pytest.raises(ValueError):
        is_lonely_points(ADD, [])


def test_verdict_json():
    assert LonelyVerdict(True).to_json() == {"lonely": True, "certificate": CERTIFIED}
    out = LonelyVerdict(False, {"shift": 3}).to_json()
    assert out["witness"] == {"shift": 3} and out["lonely"] is False
    with pytest.raises(ValueError):
        LonelyVerdict(False)


def random_roots(rng, ring):
    # plant orbit collisions often enough that both verdicts occur
    roots = [rand_rational(rng, nonzero=ring.kind == MULTIPLICATIVE)]
    for _ in range(rng.randint(0, 3)):
        if rng.random() < 0.4:
            base = Fraction(rng.choice(roots))
            k = rng.choice([-2, -1, 1, 2])
            roots.append(base + k if ring.kind == ADDITIVE else base * Fraction(ring.p) ** k)
        else:
            roots.append(rand_rational(rng, nonzero=ring.kind == MULTIPLICATIVE))
    return roots


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from((None,) + MULT_PARAMS))
def test_decision_matches_oracle(seed, p):
    rng = random.Random(seed)
    ring = ADD if p is None else SigmaLine(MULTIPLICATIVE, p)
    roots = random_roots(rng, ring)
    f = poly_from_roots(roots)
    v = is_lonely_poly(ring, f)
    assert v.lonely == lonely_oracle(ring.kind, ring.p, roots)
    assert v.certificate == CERTIFIED
    if not v.lonely:
        from zgraded.exact import poly_gcd
        from zgraded.sigma import apply_sigma

        g = ring.normalize(f)
        assert poly_gcd(g, apply_sigma(ring, g, v.witness["shift"])).degree > 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_torus_witnesses_validate(seed):
    rng = random.Random(seed)
    t = T23()
    a, b = rng.choice([1, 2, -1, 3]), rng.choice([1, -2, 5])
    f = MultiPoly(2, {(0, 0): a, (1, 0): b, (0, 1): rng.choice([1, -1, 2])})
    v = is_lonely(t, f)
    assert not v.lonely
    assert validate_witness(t, f, v)
