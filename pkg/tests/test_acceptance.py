"""Acceptance suite: one test per criterion, each timed against its budget.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
one pass/fail line per criterion.  Expected values come from oracles that
work on explicit roots and plain dictionaries, not from the library's own
orbit machinery.
"""

import itertools
import random
from collections import Counter
from fractions import Fraction

from helpers import (
    ADD,
    MULT_PARAMS,
    lonely_oracle,
    poly_from_roots,
    rand_rational,
    random_lonely_roots,
)
from zgraded.cycles import (
    AlternatingMultiple,
    Cycle,
    Pinned,
    classify_sequence,
    iterate,
    random_pleasantly_alternating,
)
from zgraded.exact import Frac, Poly, poly_gcd
from zgraded.graded import (
    GradedPieces,
    GradedRingSpec,
    SkewElement,
    apply_psi,
    gwa_embed,
    piece_generator,
    psi_pieces,
    skew_mul,
)
from zgraded.lonely import MultiPoly, is_lonely, is_lonely_poly, validate_witness
from zgraded.morita import build_L, cycle_from_S, end_of_module
from zgraded.sigma import ADDITIVE, MULTIPLICATIVE, SigmaLine, TorusDescriptor, apply_sigma
from zgraded.verification import (
    FAIL,
    PASS,
    check_closure,
    check_comaximality,
    check_cycle_lemmas,
    check_generation,
    check_stable_range,
    check_trichotomy,
    recover_cycle_data,
    support_cycle_sequence,
)

u = Poly.gen("u")
ONE = Poly((1,))
B2 = SigmaLine(MULTIPLICATIVE, "2")


# -- oracles -----------------------------------------------------------------


def brute_iterate(G, n):
    """G_n as a dict, summing shifted copies of G one at a time."""
    out = Counter()
    if n > 0:
        for k in range(n):
            for i, a in G.items():
                out[i + k] += a
    else:
        for k in range(1, -n + 1):
            for i, a in G.items():
                out[i - k] -= a
    return {i: a for i, a in out.items() if a}


def brute_sigma_n(C, n):
    """sigma^n of a dict cycle: Z_i -> Z_(i-n)."""
    return {i - n: a for i, a in C.items()}


def dict_min(a, b):
    keys = set(a) | set(b)
    return {i: min(a.get(i, 0), b.get(i, 0)) for i in keys if min(a.get(i, 0), b.get(i, 0))}


def is_alternating_oracle(C):
    coeffs = [C[i] for i in sorted(C)]
    if not coeffs or coeffs[0] != 1 or coeffs[-1] != 1:
        return False
    return all(a == (1 if k % 2 == 0 else -1) for k, a in enumerate(coeffs))


def translate_root(kind, p, c, i):
    """Root of sigma^i(u - c)."""
    if kind == ADDITIVE:
        return Fraction(c) - i
    return Fraction(c) * Fraction(p) ** (-i)


def oracle_roots(ring, h_roots, j_roots, G, n):
    """Roots of the degree-n piece h[(-G_n)^+] j[(G_n)^+], with multiplicity."""
    out = Counter()
    for i, a in brute_iterate(G, n).items():
        for c in h_roots if a < 0 else j_roots:
            out[translate_root(ring.kind, ring.p, c, i)] += abs(a)
    return out


def moved(ring, roots, m):
    """Roots of sigma^m(f) from the roots of f."""
    out = Counter()
    for r, k in roots.items():
        out[r - m if ring.kind == ADDITIVE else r * Fraction(ring.p) ** (-m)] += k
    return out


def spec_with_roots(rng, ring):
    roots = random_lonely_roots(rng, ring, rng.randint(1, 2))
    h = rng.choices(roots, k=rng.randint(0, 2))
    j = rng.choices(roots, k=rng.randint(0, 2))
    G = random_pleasantly_alternating(rng, 4)
    spec = GradedRingSpec(ring, poly_from_roots(roots), G, poly_from_roots(h), poly_from_roots(j))
    return spec, h, j


def ring_for(k, rng):
    return ADD if k % 2 == 0 else SigmaLine(MULTIPLICATIVE, rng.choice(MULT_PARAMS))


# -- criteria ----------------------------------------------------------------


def test_criterion_01_cycle_lemmas(criterion):
    rng = random.Random(101)
    with criterion(1, "cycle lemma suite, 500 cycles", 10):
        for _ in range(500):
            G = random_pleasantly_alternating(rng, 8)
            report = check_cycle_lemmas(G, 20)
            assert report.verdict == PASS and report.witness["alternating"], (G, report)
            # spot-check the iterates themselves against direct summation
            n = rng.randint(-20, 20)
            assert iterate(G, n).as_dict() == brute_iterate(G.as_dict(), n)


def all_small_cycles():
    for span in range(0, 5):
        for inner in itertools.product(range(-2, 3), repeat=max(span - 1, 0)):
            for first in (-2, -1, 1, 2):
                for last in ((-2, -1, 1, 2) if span else (None,)):
                    coeffs = [first, *inner] + ([last] if span else [])
                    yield {i: a for i, a in enumerate(coeffs) if a}


def test_criterion_02_converse_classification(criterion):
    window = 16
    counts = Counter()
    with criterion(2, "converse classification, exhaustive", 30):
        for G in all_small_cycles():
            N = max(max(G) - min(G), 1)
            its = {n: brute_iterate(G, n) for n in range(N, N + window + 1)}
            if any(a < 0 for Gn in its.values() for a in Gn.values()):
                continue
            verdict = classify_sequence(Cycle(G), window)
            mins = [dict_min(Gn, brute_sigma_n(Gn, n)) for n, Gn in its.items()]
            if isinstance(verdict, Pinned):
                counts["pinned"] += 1
                assert all(m.get(verdict.index, 0) >= 1 for m in mins), G
            else:
                assert isinstance(verdict, AlternatingMultiple)
                counts["multiple"] += 1
                base = verdict.base.as_dict()
                assert is_alternating_oracle(base), G
                assert {i: verdict.d * a for i, a in base.items()} == G
                assert all(not m for m in mins), G
        assert counts["pinned"] and counts["multiple"]


def test_criterion_03_weyl(criterion):
    with criterion(3, "Weyl algebra reproduction", 1):
        x, y, spec = gwa_embed(ADD, u)
        assert x * y - y * x == SkewElement.one(ADD)
        power = y
        for n in range(1, 13):
            # y^n = u (u - 1) ... (u - n + 1) t^-n
            expected = poly_from_roots(range(n))
            assert power.coeff(-n) == expected
            assert piece_generator(spec, -n) == expected
            power = skew_mul(ADD, power, y)


def test_criterion_04_ring_axioms(criterion):
    rng = random.Random(404)
    with criterion(4, "ring axioms on 100 random specs", 60):
        for k in range(100):
            ring = ring_for(k, rng)
            spec, h, j = spec_with_roots(rng, ring)
            N = spec.N
            pieces = GradedPieces.from_spec(spec)
            roots = {n: oracle_roots(ring, h, j, spec.G, n) for n in range(-24, 25)}
            for n in range(-12, 13):
                assert pieces(n) == poly_from_roots(roots[n].elements()), (spec, n)
            for m in range(-12, 13, 3):
                for n in range(-12, 13):
                    assert not (roots[m + n] - (roots[m] + moved(ring, roots[n], m)))
            for n in range(N, N + 7):
                a = roots[n] + moved(ring, roots[-n], n)
                b = roots[-n] + moved(ring, roots[n], -n)
                assert not set(a) & set(b)
            assert check_closure(spec, 12).verdict == PASS
            assert check_stable_range(spec, N, 6).verdict == PASS
            assert check_comaximality(spec, (N, N + 6)).verdict == PASS
            assert check_generation(spec, N, 12).verdict == PASS


def random_element(rng, ring):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        coeffs = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        terms[rng.randint(-3, 3)] = Poly(coeffs)
    return SkewElement(ring, terms)


def test_criterion_05_psi(criterion):
    rng = random.Random(505)
    with criterion(5, "psi anti-isomorphism", 10):
        for k in range(200):
            ring = ring_for(k, rng)
            a, b = random_element(rng, ring), random_element(rng, ring)
            assert apply_psi(ring, a * b) == apply_psi(ring, b) * apply_psi(ring, a)
            # x t^n -> sigma^-n(x) t^-n, term by term
            for n, c in a.terms.items():
                assert apply_psi(ring, SkewElement(ring, {n: c})).coeff(-n) == apply_sigma(ring, c, -n)
        for k in range(20):
            ring = ring_for(k, rng)
            spec, h, _ = spec_with_roots(rng, ring)
            dual = psi_pieces(GradedPieces.from_spec(spec.with_parts(j=ONE)))
            swapped = GradedPieces.from_spec(spec.with_parts(h=ONE, j=spec.h))
            for n in range(-10, 11):
                assert dual(n) == swapped(n)
                assert dual(n) == poly_from_roots(oracle_roots(ring, [], h, spec.G, n).elements())


def test_criterion_06_morita(criterion):
    with criterion(6, "Morita endomorphism identity", 30):
        for k in range(5):
            for S in itertools.combinations(range(4), k):
                for h in (u, u * u):
                    L = build_L(ADD, h, set(S), 8 + 4 + 8)
                    end = end_of_module(ADD, L, 8)
                    G = cycle_from_S(set(S))
                    spec = GradedRingSpec(ADD, u, G, h)
                    h_roots = [0] * h.degree
                    for m in range(-8, 9):
                        want = poly_from_roots(oracle_roots(ADD, h_roots, [], G.as_dict(), m).elements())
                        assert end(m) == Frac(want), (S, h, m)
                        assert piece_generator(spec, m) == want


def test_criterion_07_trichotomy(criterion):
    rng = random.Random(707)
    with criterion(7, "support trichotomy", 20):
        for ring, q in ((ADD, u), (B2, poly_from_roots([1]))):
            for _ in range(20):
                G = random_pleasantly_alternating(rng, 6)
                for (h, j), label in (((q, q), "I"), ((ONE, q), "II"), ((q, ONE), "III")):
                    spec = GradedRingSpec(ring, q, G, h, j)
                    seq = support_cycle_sequence(spec, q, 10)
                    report = check_trichotomy(seq, G)
                    assert report.verdict == PASS and report.witness["case"] == label
                    for n in (-10, -3, 0, 4, 10):
                        Gn = brute_iterate(G.as_dict(), n)
                        want = {
                            "I": {i: abs(a) for i, a in Gn.items()},
                            "II": {i: a for i, a in Gn.items() if a > 0},
                            "III": {i: -a for i, a in Gn.items() if a < 0},
                        }[label]
                        assert seq.E(n).as_dict() == want


def test_criterion_08_recovery(criterion):
    rng = random.Random(808)
    with criterion(8, "divisor-sequence recovery", 5):
        for _ in range(100):
            G = random_pleasantly_alternating(rng, 6)
            omega = {i: rng.randint(0, 2) for i in range(-2, 5)}
            omega = {i: a for i, a in omega.items() if a}
            start = max(G.span(), 1) + rng.randint(0, 3)
            E = {}
            for n in range(start, start + 10):
                Gn = brute_iterate(G.as_dict(), n)
                E[n] = Cycle({i: Gn.get(i, 0) - omega.get(i, 0) for i in set(Gn) | set(omega)})
            got_G, got_omega = recover_cycle_data(E)
            assert got_G == G and got_omega.as_dict() == omega
            bad = dict(E)
            n = rng.choice(sorted(bad))
            bad[n] = bad[n] + Cycle({rng.randint(-3, 8): rng.choice([-1, 1])})
            try:
                recover_cycle_data(bad)
            except ValueError:
                pass
            else:
                raise AssertionError(f"perturbed sequence accepted at n={n}")


def test_criterion_09_lonely(criterion):
    rng = random.Random(909)
    with criterion(9, "lonely decisions", 30):
        for kind in (ADDITIVE, MULTIPLICATIVE):
            for _ in range(200):
                ring = ADD if kind == ADDITIVE else SigmaLine(MULTIPLICATIVE, rng.choice(MULT_PARAMS))
                roots = [rand_rational(rng, -4, 4, nonzero=kind == MULTIPLICATIVE)]
                for _ in range(rng.randint(0, 3)):
                    if rng.random() < 0.5:
                        base, e = Fraction(rng.choice(roots)), rng.choice([-2, -1, 1, 2])
                        roots.append(base + e if kind == ADDITIVE else base * Fraction(ring.p) ** e)
                    else:
                        roots.append(rand_rational(rng, -4, 4, nonzero=kind == MULTIPLICATIVE))
                f = poly_from_roots(roots)
                verdict = is_lonely_poly(ring, f)
                assert verdict.lonely == lonely_oracle(kind, ring.p, roots), (ring, roots)
                if not verdict.lonely:
                    g = ring.normalize(f)
                    shifted = apply_sigma(ring, g, verdict.witness["shift"])
                    assert poly_gcd(g, shifted).degree > 0
        torus = TorusDescriptor(2, ["2", "3"], names=["x2", "x3"])
        f = MultiPoly.from_expr("1 + x2 + x3", ("x2", "x3"))
        verdict = is_lonely(torus, f)
        assert not verdict.lonely and validate_witness(torus, f, verdict)
        a, b = verdict.witness["point"]
        n = verdict.witness["shift"]
        assert 1 + a + b == 0 and 1 + 2 ** n * a + 3 ** n * b == 0
        verdict = is_lonely(torus, MultiPoly.from_expr("1 + x2*x3", ("x2", "x3")))
        assert verdict.lonely


def test_criterion_10_negative_control(criterion):
    with criterion(10, "non-lonely orbit breaks comaximality", 5):
        f = poly_from_roots([0, 1])
        for G in (Cycle({0: 1}), Cycle({0: 1, 1: -1, 2: 1})):
            spec = GradedRingSpec(ADD, f, G, f, ONE, check_lonely=False)
            report = check_comaximality(spec, (spec.N, spec.N + 6))
            assert report.verdict == FAIL
            n = report.witness["n"]
            assert n <= spec.N + 6 and report.witness["common_factor"] != "1"
            # the two products share a root by the oracle too
            roots = {k: oracle_roots(ADD, [0, 1], [], G.as_dict(), k) for k in (n, -n)}
            left = roots[n] + moved(ADD, roots[-n], n)
            right = roots[-n] + moved(ADD, roots[n], -n)
            assert set(left) & set(right)
