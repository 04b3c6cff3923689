"""Progenerators L = sum_n H[F_n] t^n over A = B(Z_a, H, R) and their
endomorphism rings, which realize B(G, H, R) for pleasantly alternating G.

Everything is principal: a graded fractional module is a map from degrees
to reduced fractions of polynomials.
"""

from .cycles import Cycle, Z, alternating_endpoints, iterate, pos_part, shift
from .exact import Frac, LaurentPoly, Poly, poly_gcd, poly_lcm
from .graded import GradedPieces, sigma_frac, translate_product
from .sigma import OrbitPoint, apply_sigma
from .verification import FAIL, PASS, Report

__all__ = [
    "GradedFractionalModule",
    "cycle_from_S",
    "s_from_cycle",
    "build_L",
    "hom_generator",
    "hom_in_R",
    "intersect_fractional",
    "sum_fractional",
    "end_of_module",
    "hom_module",
    "check_morita",
    "StabilizationError",
]

TAIL = 3


class StabilizationError(ValueError):
    """The window is too small for the tails of the module to settle."""


class GradedFractionalModule:
    """Degree n -> fractional generator (a reduced Frac) on a finite window."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = {}
        for n, g in gens.items():
            g = _frac(g)
            if not g.num:
                raise ValueError(f"zero generator in degree {n}")
            self.gens[int(n)] = _normal(ring, g)

    def __call__(self, n):
        return self.gens[n]

    def __contains__(self, n):
        return n in self.gens

    @property
    def window(self):
        return min(self.gens), max(self.gens)

    def degrees(self):
        return sorted(self.gens)

    def dump(self):
        return {str(n): str(g) for n, g in sorted(self.gens.items())}

    def __eq__(self, other):
        return isinstance(other, GradedFractionalModule) and self.gens == other.gens


def _frac(g):
    if isinstance(g, Frac):
        return g
    if isinstance(g, LaurentPoly):
        g = g.core
    if isinstance(g, Poly):
        return Frac(g)
    return Frac(Poly((g,)))


def _normal(ring, g):
    """Monic numerator and denominator (and no u-powers on the unit line)."""
    num = ring.normalize(g.num)
    den = ring.normalize(g.den)
    return Frac(num, den)


def cycle_from_S(S, a=0):
    """G = Z_a + sigma^-1(D) - D with D = sum_{j in S} Z_{a+j}."""
    S = sorted(set(S))
    if any(j < 0 for j in S):
        raise ValueError("S must contain nonnegative offsets")
    D = Cycle({a + j: 1 for j in S})
    return Z(a) + shift(D, -1) - D


def s_from_cycle(G, a=0):
    """S = {i >= 0 : sum_{j <= a+i} g_j = 0} for G pleasantly alternating and
    supported on indices >= a; inverse of cycle_from_S."""
    ends = alternating_endpoints(G)
    if ends is None:
        raise ValueError(f"{G!r} is not pleasantly alternating")
    r, s = ends
    if r < a:
        raise ValueError(f"{G!r} is not supported on indices >= {a}")
    out = set()
    acc = 0
    for i in range(0, s - a + 1):
        acc += G[a + i]
        if acc == 0:
            out.add(i)
    return out


def _base_E(n, a=0):
    """E_n = max(-(Z_a)_n, 0): zero for n >= 0, Z_{a+n} + ... + Z_{a-1} below."""
    return pos_part(-iterate(Z(a), n))


def build_L(ring, h, S, window, q=None, a=0):
    """L = sum_n H[F_n] t^n with F_n = E_n + sum_{j in S, n <= j} Z_{a+j}.

    Degrees cover [-window, max(S) + window].
    """
    S = sorted(set(S))
    if q is not None:
        point = q if isinstance(q, OrbitPoint) else OrbitPoint(q, ring)
        hn = ring.normalize(h)
        if hn.degree > 0 and (point.q ** hn.degree) % hn:
            raise ValueError(f"h = {hn} is not supported on V({point.q})")
    top = (max(S) if S else 0) + window
    gens = {}
    for n in range(-window, top + 1):
        F = _base_E(n, a) + Cycle({a + j: 1 for j in S if n <= j})
        gens[n] = translate_product(ring, h, F)
    return GradedFractionalModule(ring, gens)


def hom_generator(ring, a, b):
    """{x in K : x (a) subset (b)} = (b / a), as a reduced fraction."""
    a, b = _frac(a), _frac(b)
    if not a.num or not b.num:
        raise ValueError("hom between zero ideals")
    return _normal(ring, b / a)


def hom_in_R(ring, a, b):
    """Generator of Hom(a, b) intersected with R: b / gcd(a, b)."""
    if not a or not b:
        raise ValueError("hom between zero ideals")
    return ring.normalize(b.exact_div(poly_gcd(a, b)))


def intersect_fractional(ring, fracs):
    """Intersection of principal fractional ideals (x_k): largest valuation at
    every prime, i.e. lcm of numerators over gcd of denominators."""
    fracs = [_frac(x) for x in fracs]
    num = fracs[0].num
    den = fracs[0].den
    for x in fracs[1:]:
        num = poly_lcm(num, x.num)
        den = poly_gcd(den, x.den)
    return _normal(ring, Frac(num, den))


def sum_fractional(ring, fracs):
    """Sum of principal fractional ideals: gcd of numerators over lcm of
    denominators."""
    fracs = [_frac(x) for x in fracs]
    num = fracs[0].num
    den = fracs[0].den
    for x in fracs[1:]:
        num = poly_gcd(num, x.num)
        den = poly_lcm(den, x.den)
    return _normal(ring, Frac(num, den))


def _stable(seq):
    return len(seq) >= TAIL and all(x == seq[0] for x in seq[:TAIL])


def _hom_intersection(ring, source, target, m):
    """Intersection over n of Hom(sigma^m(source_n), target_{n+m})."""
    terms = []
    for n in source.degrees():
        if n + m in target:
            terms.append(hom_generator(ring, sigma_frac(ring, source(n), m), target(n + m)))
    if len(terms) < 2 * TAIL:
        raise StabilizationError(f"window too small in degree {m}")
    if not _stable(terms) or not _stable(terms[::-1]):
        raise StabilizationError(f"hom sequence has not stabilized in degree {m}")
    return intersect_fractional(ring, terms)


def end_of_module(ring, L, window):
    """Degree-m generators of End(L) = {x : x L subset L} for |m| <= window.

    Each is an intersection over the degrees n of L of Hom(sigma^m(L_n),
    L_{n+m}); both ends of the sequence must be constant over a few terms
    before the finite intersection is trusted.
    """
    return GradedFractionalModule(
        ring, {m: _hom_intersection(ring, L, L, m) for m in range(-window, window + 1)}
    )


def _module_of(ring, pieces, lo, hi):
    return GradedFractionalModule(ring, {n: pieces(n) for n in range(lo, hi + 1)})


def hom_module(ring, L, A, window):
    """M = Hom(L, A) = {x : x L subset A}, degrees |m| <= window."""
    return GradedFractionalModule(
        ring, {m: _hom_intersection(ring, L, A, m) for m in range(-window, window + 1)}
    )


def _pairing(ring, left, right, sign, window):
    """Sum over n of left_{-sign n} sigma^(-sign n)(right_{sign n})."""
    terms = []
    for n in range(-window, window + 1):
        k = sign * n
        if -k in left and k in right:
            terms.append(left(-k) * sigma_frac(ring, right(k), -k))
    return sum_fractional(ring, terms)


def _h_side(ring, h, S, window, a=0):
    span = (max(S) if S else 0) + 1
    wide = window + span + 2 * TAIL
    L = build_L(ring, h, S, wide, a=a)
    end = end_of_module(ring, L, window)
    return L, end, wide


def check_morita(spec, window, target=None):
    """Verify that End(L) realizes B(G, H, J) on |m| <= window.

    The H-side uses L over A = B(Z_c, H, R), c the lowest index of G; when
    j != 1 the J-side is computed the same way and transported by psi.  The
    pairings M L and L M must reach the unit ideal in degree 0.
    """
    ring = spec.ring
    G = spec.G
    c = G.lo
    # reindex so that the cycle starts at Z_0: B(G, h) = B(shift(G, c), sigma^c(h))
    G0 = shift(G, c)
    S = s_from_cycle(G0)
    target = target if target is not None else GradedPieces.from_spec(spec)
    h0 = ring.normalize(apply_sigma(ring, spec.h, c))
    j0 = ring.normalize(apply_sigma(ring, spec.j, c))
    L, end_h, wide = _h_side(ring, h0, S, window)
    end_j = None
    if j0.degree > 0:
        _, end_j, _ = _h_side(ring, j0, S, window)
    for m in range(-window, window + 1):
        got = end_h(m)
        if end_j is not None:
            # psi(B(G, J, R)) = B(G, R, J): degree m is sigma^m of degree -m
            got = got * sigma_frac(ring, end_j(-m), m)
        got = _normal(ring, got)
        want = _normal(ring, _frac(target(m)))
        if got != want:
            return Report(
                "morita",
                FAIL,
                (-window, window),
                {"m": m, "end": str(got), "piece": str(want), "S": sorted(S)},
            )
    base = _module_of(ring, _base_pieces(ring, h0), -wide, wide)
    M = hom_module(ring, L, base, window)
    ml = _pairing(ring, M, L, 1, window)
    lm = _pairing(ring, L, M, -1, window)
    unit = Frac(Poly((1,)))
    if ml != unit or lm != unit:
        return Report(
            "morita",
            FAIL,
            (-window, window),
            {"ML": str(ml), "LM": str(lm), "S": sorted(S)},
        )
    return Report("morita", PASS, (-window, window), {"S": sorted(S), "shift": c})


def _base_pieces(ring, h):
    def fn(n):
        return translate_product(ring, h, _base_E(n))

    return fn
