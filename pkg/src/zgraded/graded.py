"""Skew-Laurent arithmetic in T[t, 1/t; sigma] and the graded rings B(G, H, J).

All ideals of T are principal and stored as monic generators; the degree-n
piece of B(G, H, J) is g_n * t^n with

    g_n = H[(-G_n)^+] * J[(G_n)^+],   H[D] = prod_i sigma^i(h)^(d_i).
"""

from dataclasses import dataclass, field
from functools import lru_cache

from .cycles import Cycle, Z, is_pleasantly_alternating, iterate, pos_part
from .exact import Frac, LaurentPoly, Poly, poly_gcd
from .sigma import ADDITIVE, OrbitPoint, SigmaLine, apply_sigma, orbit_incidence

__all__ = [
    "SkewElement",
    "GradedRingSpec",
    "GradedPieces",
    "OrbitConditionError",
    "skew_mul",
    "translate_product",
    "piece_generator",
    "contains",
    "gwa_embed",
    "apply_psi",
    "twist_cocycle",
    "pic_twist",
    "intersect_specs",
    "sigma_frac",
    "psi_pieces",
]


def _zero_like(ring, var="u"):
    if ring.kind == ADDITIVE:
        return Poly((), var)
    return LaurentPoly(Poly((), var))


def _to_T(ring, f):
    """Coerce a coefficient into T: Poly on the additive line, LaurentPoly on
    the multiplicative one."""
    if ring.kind == ADDITIVE:
        if isinstance(f, LaurentPoly):
            if f.shift < 0:
                raise ValueError("negative powers of u are not in Q[u]")
            return Poly(f.to_dict(), f.var)
        if isinstance(f, Poly):
            return f
        return Poly((f,))
    if isinstance(f, LaurentPoly):
        return f
    if isinstance(f, Poly):
        return LaurentPoly(f)
    return LaurentPoly(Poly((f,)))


class SkewElement:
    """Finite sum of f_n t^n with coefficients in T."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        out = {}
        for n, f in (terms or {}).items():
            f = _to_T(ring, f)
            if f:
                out[int(n)] = f
        self.terms = out

    @classmethod
    def monomial(cls, ring, f, n=0):
        return cls(ring, {n: f})

    @classmethod
    def t(cls, ring, n=1):
        return cls(ring, {n: 1})

    @classmethod
    def one(cls, ring):
        return cls(ring, {0: 1})

    def coeff(self, n):
        return self.terms.get(n, _zero_like(self.ring))

    def degrees(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for n, f in other.terms.items():
            out[n] = out[n] + f if n in out else f
        return SkewElement(self.ring, out)

    def __neg__(self):
        return SkewElement(self.ring, {n: -f for n, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SkewElement):
            return skew_mul(self.ring, self, other)
        return SkewElement(self.ring, {n: f * other for n, f in self.terms.items()})

    def __rmul__(self, other):
        return SkewElement(self.ring, {n: other * f for n, f in self.terms.items()})

    def __pow__(self, k):
        out = SkewElement.one(self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SkewElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((n, hash(f)) for n, f in self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for n in sorted(self.terms, reverse=True):
            f = self.terms[n]
            if n == 0:
                parts.append(f"({f})")
            else:
                parts.append(f"({f})*t^{n}")
        return " + ".join(parts)


def skew_mul(ring, a, b):
    """(f t^m)(g t^n) = f sigma^m(g) t^(m+n), extended bilinearly."""
    out = {}
    for m, f in a.terms.items():
        for n, g in b.terms.items():
            term = f * apply_sigma(ring, g, m)
            k = m + n
            out[k] = out[k] + term if k in out else term
    return SkewElement(ring, out)


def translate_product(ring, h, D):
    """H[D] = prod_i sigma^i(h)^(d_i) for an effective cycle D."""
    if not D.is_effective():
        raise ValueError("cycle not effective")
    out = Poly((1,), h.var) if isinstance(h, Poly) else Poly((1,))
    for i, a in D.items():
        out = out * apply_sigma(ring, h, i) ** a
    return out


def sigma_frac(ring, x, m):
    """sigma^m on a fraction of polynomials."""
    return Frac(apply_sigma(ring, x.num, m), apply_sigma(ring, x.den, m))


class OrbitConditionError(ValueError):
    """Two factors of f lie on one sigma-orbit."""

    def __init__(self, first, second, shift):
        self.first = first
        self.second = second
        self.shift = shift
        super().__init__(
            f"factors {first} and {second} lie on one orbit: sigma^{shift}({first}) = {second}"
        )


@dataclass(frozen=True)
class GradedRingSpec:
    """Data (ring, q, G, h, j) defining B(G, H, J) with H = (h), J = (j).

    ``q`` defines the closed set Z; h and j must be supported on Z.  With
    ``check_lonely=False`` the loneliness of Z is not enforced, which is only
    meant for negative controls.
    """

    ring: SigmaLine
    q: Poly
    G: Cycle
    h: Poly = field(default_factory=lambda: Poly((1,)))
    j: Poly = field(default_factory=lambda: Poly((1,)))
    check_lonely: bool = True

    def __post_init__(self):
        ring = self.ring
        point = OrbitPoint(self.q, ring)
        object.__setattr__(self, "q", point.q)
        if not is_pleasantly_alternating(self.G):
            raise ValueError(f"G = {self.G!r} is not pleasantly alternating")
        for name in ("h", "j"):
            g = getattr(self, name)
            if not isinstance(g, Poly):
                g = _to_T(SigmaLine(), g) if not isinstance(g, LaurentPoly) else g
            if not g:
                raise ValueError(f"{name} must be nonzero")
            g = ring.normalize(g)
            if g.degree > 0 and (point.q ** g.degree) % g:
                raise ValueError(f"{name} = {g} is not supported on Z = V({point.q})")
            object.__setattr__(self, name, g)
        if self.check_lonely:
            from .lonely import is_lonely_poly

            verdict = is_lonely_poly(ring, point.q)
            if not verdict.lonely:
                raise ValueError(f"V({point.q}) is not sigma-lonely: {verdict.witness}")

    @property
    def N(self):
        return self.G.span()

    def piece_generator(self, n):
        return _piece(self, n)

    def pieces(self):
        return GradedPieces.from_spec(self)

    def with_parts(self, h=None, j=None):
        return GradedRingSpec(
            self.ring,
            self.q,
            self.G,
            self.h if h is None else h,
            self.j if j is None else j,
            self.check_lonely,
        )

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "orbit": str(self.q),
            "G": self.G.to_json(),
            "h": str(self.h),
            "j": str(self.j),
        }


@lru_cache(maxsize=65536)
def _piece(spec, n):
    if n == 0:
        return Poly((1,), spec.q.var)
    Gn = iterate(spec.G, n)
    out = translate_product(spec.ring, spec.h, pos_part(-Gn))
    out = out * translate_product(spec.ring, spec.j, pos_part(Gn))
    return spec.ring.normalize(out)


def piece_generator(spec, n):
    """Monic generator g_n of the degree-n piece I_n."""
    return _piece(spec, n)


class GradedPieces:
    """A graded family n -> g_n of principal ideals of T (the ring's pieces)."""

    def __init__(self, ring, fn, label=""):
        self.ring = ring
        self._fn = fn
        self._cache = {}
        self.label = label

    def __call__(self, n):
        if n not in self._cache:
            self._cache[n] = self._fn(n)
        return self._cache[n]

    @classmethod
    def from_spec(cls, spec):
        return cls(spec.ring, spec.piece_generator, label="B(G,H,J)")

    @classmethod
    def from_mapping(cls, ring, mapping, default=None):
        def fn(n):
            if n in mapping:
                return ring.normalize(mapping[n])
            if default is None:
                raise KeyError(f"no piece stored in degree {n}")
            return default(n)

        return cls(ring, fn, label="mapping")

    def override(self, n, g):
        """Copy with the degree-n generator replaced."""
        base = self

        def fn(k):
            return self.ring.normalize(g) if k == n else base(k)

        return GradedPieces(self.ring, fn, label=f"{self.label} (modified at {n})")

    def table(self, lo, hi):
        return {n: self(n) for n in range(lo, hi + 1)}

    def dump(self, lo, hi):
        return {str(n): str(self(n)) for n in range(lo, hi + 1)}


def intersect_specs(specs):
    """Pieces of the intersection of rings on pairwise distinct orbits: the
    generators multiply because the parts are coprime."""
    specs = list(specs)
    if not specs:
        raise ValueError("empty list of specs")
    ring = specs[0].ring
    if any(s.ring != ring for s in specs):
        raise ValueError("specs live over different rings")

    def fn(n):
        out = Poly((1,))
        for s in specs:
            out = out * s.piece_generator(n)
        return ring.normalize(out)

    return GradedPieces(ring, fn, label="intersection")


def contains(spec, a):
    """Membership of a skew element: every coefficient divisible by g_n."""
    pieces = spec if isinstance(spec, GradedPieces) else GradedPieces.from_spec(spec)
    for n, f in a.terms.items():
        if isinstance(f, LaurentPoly):
            f = f.core
        if not pieces(n).divides(f):
            return False
    return True


def gwa_embed(ring, f):
    """Embed the generalized Weyl algebra T(sigma, f) via x = t, y = f t^-1.

    Returns (x, y, spec) with spec = B(Z_0, (sigma(f)), R) on the orbit data
    of f.  Raises OrbitConditionError when two roots of f share an orbit.
    """
    if not isinstance(f, (Poly, LaurentPoly)):
        raise TypeError("f must be a polynomial")
    core = ring.normalize(f)
    if core.degree < 1:
        raise ValueError("f must be nonconstant (and not a unit)")
    rad = core.squarefree_part()
    hits, _ = orbit_incidence(ring, rad, rad)
    bad = sorted((i for i in hits if i != 0), key=lambda i: (abs(i), -i))
    if bad:
        i = bad[0]
        common = poly_gcd(rad, apply_sigma(ring, rad, i))
        first = ring.normalize(apply_sigma(ring, common, -i))
        raise OrbitConditionError(first, ring.normalize(common), i)
    x = SkewElement.t(ring, 1)
    y = SkewElement(ring, {-1: _to_T(ring, f)})
    h = ring.normalize(apply_sigma(ring, core, 1))
    spec = GradedRingSpec(ring, h.squarefree_part(), Z(0), h, Poly((1,)))
    return x, y, spec


def apply_psi(ring, a):
    """The anti-automorphism f t^n -> sigma^-n(f) t^-n."""
    return SkewElement(ring, {-n: apply_sigma(ring, f, -n) for n, f in a.terms.items()})


def psi_pieces(pieces):
    """Pieces of psi(B): degree n is sigma^n of the degree -n piece."""
    ring = pieces.ring

    def fn(n):
        return ring.normalize(apply_sigma(ring, pieces(-n), n))

    return GradedPieces(ring, fn, label=f"psi({pieces.label})")


def twist_cocycle(ring, x, n):
    """x_n = x sigma(x) ... sigma^(n-1)(x), x_0 = 1,
    x_-n = (sigma^-1(x) ... sigma^-n(x))^-1."""
    if not isinstance(x, Frac):
        x = Frac(x) if isinstance(x, Poly) else Frac(Poly((x,)))
    if not x.num:
        raise ValueError("twist by zero")
    out = Frac(Poly((1,), x.var))
    if n >= 0:
        for k in range(n):
            out = out * sigma_frac(ring, x, k)
        return out
    for k in range(1, -n + 1):
        out = out * sigma_frac(ring, x, -k)
    return out.inverse()


def pic_twist(pieces, x):
    """Twisted pieces n -> x_n g_n as fractions, together with the x_n."""
    ring = pieces.ring
    if isinstance(x, Frac) and not x.num:
        raise ValueError("twist by zero")

    def fn(n):
        return twist_cocycle(ring, x, n) * Frac(_as_poly(pieces(n)))

    return GradedFractionalPieces(ring, fn)


def _as_poly(f):
    if isinstance(f, LaurentPoly):
        return f.core
    return f


class GradedFractionalPieces:
    """n -> fractional generator in the fraction field of T."""

    def __init__(self, ring, fn):
        self.ring = ring
        self._fn = fn
        self._cache = {}

    def __call__(self, n):
        if n not in self._cache:
            self._cache[n] = self._fn(n)
        return self._cache[n]

    def non_polynomial_degrees(self, lo, hi):
        """Degrees in [lo, hi] where the generator is not a polynomial."""
        bad = []
        for n in range(lo, hi + 1):
            g = self(n)
            den = g.den
            if self.ring.kind != ADDITIVE and den.degree > 0:
                # u is a unit on the multiplicative line
                den = self.ring.normalize(den)
            if den.degree > 0:
                bad.append(n)
        return bad

    def dump(self, lo, hi):
        return {str(n): str(self(n)) for n in range(lo, hi + 1)}
