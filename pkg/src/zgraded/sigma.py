"""The pair (T, sigma) in its two normal forms and orbit bookkeeping.

ADDITIVE: T = Q[u], sigma(u) = u + 1.
MULTIPLICATIVE: T = F[u, 1/u], sigma(u) = p*u with p rational (not 0, +-1)
or the transcendental p of Q(p).

Orientation: the coefficient of Z_i in a support cycle is the exponent of
sigma^i(q).  So sigma^i(u) = u + i in the additive case.
"""

from dataclasses import dataclass, field

from .exact import (
    Frac,
    LaurentPoly,
    Poly,
    root_bound,
    poly_gcd,
    qq,
    resultant,
    symbolic_p,
)

__all__ = [
    "ADDITIVE",
    "MULTIPLICATIVE",
    "CERTIFIED",
    "WINDOWED",
    "SigmaLine",
    "TorusDescriptor",
    "OrbitPoint",
    "apply_sigma",
    "orbit_incidence",
    "multiplicity",
    "same_orbit",
    "integer_log",
    "params_free_abelian",
]

ADDITIVE = "ADDITIVE"
MULTIPLICATIVE = "MULTIPLICATIVE"
CERTIFIED = "CERTIFIED"
WINDOWED = "WINDOWED"

SYMBOLIC_WINDOW = 64


@dataclass(frozen=True)
class SigmaLine:
    kind: str = ADDITIVE
    p: object = None

    def __post_init__(self):
        if self.kind not in (ADDITIVE, MULTIPLICATIVE):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == ADDITIVE:
            if self.p is not None:
                raise ValueError("the additive line takes no parameter")
            return
        p = self.p
        if p is None:
            raise ValueError("the multiplicative line needs a parameter p")
        if isinstance(p, str):
            p = symbolic_p() if p == "symbolic" else qq(p)
        elif isinstance(p, Frac) and p.is_rational():
            p = qq(p)
        elif not isinstance(p, Frac):
            p = qq(p)
        if isinstance(p, Frac):
            if p != symbolic_p():
                raise ValueError("only the transcendental p itself is supported")
        elif p in (0, 1, -1):
            raise ValueError("p must not be 0 or a root of unity")
        object.__setattr__(self, "p", p)

    @classmethod
    def additive(cls):
        return cls(ADDITIVE)

    @classmethod
    def multiplicative(cls, p):
        return cls(MULTIPLICATIVE, p)

    @property
    def symbolic(self):
        return self.kind == MULTIPLICATIVE and isinstance(self.p, Frac)

    def to_json(self):
        if self.kind == ADDITIVE:
            return {"kind": "A", "dim": 1}
        p = "symbolic" if self.symbolic else str(self.p)
        return {"kind": "B", "p": p, "dim": 1}

    @classmethod
    def from_json(cls, data):
        kind = data.get("kind", "A")
        if kind in ("A", ADDITIVE):
            return cls(ADDITIVE)
        if kind in ("B", MULTIPLICATIVE):
            p = data.get("p")
            if p is None and data.get("params"):
                p = data["params"][0]
            return cls(MULTIPLICATIVE, str(p))
        raise ValueError(f"unknown ring kind {kind!r}")

    def normalize(self, f):
        """Canonical generator of the ideal (f): monic, and free of u-powers
        on the multiplicative line where u is a unit."""
        if isinstance(f, LaurentPoly):
            if self.kind == ADDITIVE:
                if f.shift < 0:
                    raise ValueError("negative powers of u are not in Q[u]")
                f = Poly(f.to_dict(), f.var)
            else:
                f = f.core
        if self.kind == MULTIPLICATIVE and f:
            low = f.low_degree()
            if low:
                f = Poly._raw(list(f.c[low:]), f.var)
        return f.monic()

    def sigma(self, f, m):
        return apply_sigma(self, f, m)


def apply_sigma(ring, f, m):
    """sigma^m(f).  Additive: u -> u + m.  Multiplicative: u^k -> p^(mk) u^k."""
    if m == 0:
        return f
    if ring.kind == ADDITIVE:
        if isinstance(f, LaurentPoly):
            if f.shift < 0:
                raise ValueError("negative powers of u are not in Q[u]")
            return LaurentPoly(Poly(f.to_dict(), f.var).shift(m))
        return f.shift(m)
    factor = ring.p ** m
    if isinstance(f, LaurentPoly):
        if not f:
            return f
        return LaurentPoly(f.core.scale(factor) * factor ** f.shift, f.shift)
    return f.scale(factor)


@dataclass(frozen=True)
class OrbitPoint:
    """A point of the line given by its defining polynomial q (monic)."""

    q: Poly
    ring: SigmaLine = field(default_factory=SigmaLine)

    def __post_init__(self):
        q = self.ring.normalize(self.q)
        if q.degree < 1:
            raise ValueError("orbit point needs a nonconstant non-unit generator")
        object.__setattr__(self, "q", q)

    def translate(self, i):
        return apply_sigma(self.ring, self.q, i).monic()

    def __str__(self):
        return str(self.q)


def _as_point(ring, q):
    if isinstance(q, OrbitPoint):
        return q
    return OrbitPoint(q, ring)


def _root_bounds(f):
    """(lower, upper) bounds on the absolute values of the roots of f,
    assuming f(0) != 0."""
    upper = root_bound(f)
    lower = 1 / root_bound(f.reverse())
    return lower, upper


def integer_log(base, target):
    """Smallest K >= 0 with b^K >= target, where b = max(|base|, 1/|base|)."""
    base = abs(qq(base))
    if base == 1 or base == 0:
        raise ValueError("integer_log needs |base| different from 0 and 1")
    if base < 1:
        base = 1 / base
    K = 0
    acc = qq(1)
    while acc < target:
        acc *= base
        K += 1
    return K


def _monomial_root(ring, q):
    """For linear q with root c*p^k (c rational) return (c, k)."""
    if q.degree != 1:
        return None
    root = -q.coeff(0) / q.coeff(1)
    if not isinstance(root, Frac):
        return qq(root), 0
    num, den = root.num, root.den
    if len(den.items()) != 1 or len(num.items()) != 1:
        return None
    (kn, cn), = num.items()
    (kd, cd), = den.items()
    return qq(cn / cd), kn - kd


def _clear_denominators(f):
    """Multiply a polynomial over Q(p) by a common denominator, giving
    coefficients that are polynomials in p."""
    den = Poly((1,), "p")
    for v in f.c:
        if isinstance(v, Frac):
            den = den * v.den.exact_div(poly_gcd(den, v.den))
    out = []
    for v in f.c:
        if isinstance(v, Frac):
            out.append((v.num * den).exact_div(v.den))
        else:
            out.append(den * qq(v))
    return out


def _monomial_root_bound(coeffs):
    """Bound M such that sum_k A_k(p) c^k p^(mk) has a single dominant term
    whenever |m| >= M (A_k polynomials in p)."""
    spans = []
    for k, a in enumerate(coeffs):
        if a:
            spans.append((k, a.degree, a.low_degree()))
    M = 0
    for k, hi, lo in spans:
        for k2, hi2, lo2 in spans:
            if k != k2:
                M = max(M, abs(hi - lo2), abs(hi2 - lo))
    return M + 1


def _vanishes_at_monomial(f, c, k):
    p = symbolic_p()
    return f(c * p ** k) == 0


def _shared_root(f, g):
    return resultant(f, g) == 0


_PROBE = qq(1009)


def _specialize(f, a):
    """Substitute p = a in the coefficients of f; None if a pole or the
    leading coefficient vanishes."""
    out = []
    for c in f.c:
        if isinstance(c, Frac):
            den = c.den(a)
            if den == 0:
                return None
            out.append(c.num(a) / den)
        else:
            out.append(c)
    if out[-1] == 0:
        return None
    return Poly(out, f.var)


def _symbolic_coprime(f, g):
    # a nontrivial gcd over Q(p) survives any specialization that keeps both
    # degrees, so a coprime specialization settles the question cheaply
    fs, gs = _specialize(f, _PROBE), _specialize(g, _PROBE)
    if fs is not None and gs is not None and not _shared_root(fs, gs):
        return True
    return poly_gcd(f, g).degree == 0


def orbit_incidence(ring, f, q, window=SYMBOLIC_WINDOW):
    """Indices i with gcd(f, sigma^i(q)) != 1 and a completeness flag."""
    if not f:
        raise ValueError("incidence of the zero polynomial")
    point = _as_point(ring, q)
    f = ring.normalize(f)
    qn = point.q
    if f.degree < 1:
        return set(), CERTIFIED
    if ring.kind == ADDITIVE:
        bound = int(root_bound(f) + root_bound(qn))
        hits = {i for i in range(-bound, bound + 1) if _shared_root(f, qn.shift(i))}
        return hits, CERTIFIED
    if not ring.symbolic:
        lf, uf = _root_bounds(f)
        lq, uq = _root_bounds(qn)
        ratio = max(uf / lq, uq / lf)
        K = integer_log(abs(ring.p), ratio)
        hits = {
            i for i in range(-K, K + 1) if _shared_root(f, apply_sigma(ring, qn, i))
        }
        return hits, CERTIFIED
    # symbolic p: certify through a monomial root of q or of f
    mono = _monomial_root(ring, qn)
    if mono is not None:
        c, k = mono
        M = _monomial_root_bound(_clear_denominators(f))
        # sigma^i(q) has root c*p^(k-i)
        hits = {
            k - m for m in range(-M, M + 1) if _vanishes_at_monomial(f, c, m)
        }
        return hits, CERTIFIED
    mono = _monomial_root(ring, f) if f.degree == 1 else None
    if mono is not None:
        c, k = mono
        M = _monomial_root_bound(_clear_denominators(qn))
        # f(c p^k) shares a root with sigma^i(q) iff q(c p^(k+i)) = 0
        hits = {
            m - k for m in range(-M, M + 1) if _vanishes_at_monomial(qn, c, m)
        }
        return hits, CERTIFIED
    hits = set()
    for i in range(-window, window + 1):
        if not _symbolic_coprime(f, apply_sigma(ring, qn, i)):
            hits.add(i)
    return hits, WINDOWED


def multiplicity(ring, f, q, i):
    """Largest m with sigma^i(q)^m dividing f."""
    if not f:
        raise ValueError("multiplicity in the zero polynomial")
    point = _as_point(ring, q)
    f = ring.normalize(f)
    t = point.translate(i)
    m = 0
    while f.degree >= t.degree:
        quo, rem = divmod(f, t)
        if rem:
            break
        f = quo
        m += 1
    return m


def _power_exponent(ring, ratio, e):
    """Integer i with p^(i*e) == ratio, or None."""
    if ratio == 1:
        return 0
    p = ring.p
    if ring.symbolic:
        if not isinstance(ratio, Frac):
            return None
        num, den = ratio.num, ratio.den
        if len(num.items()) != 1 or len(den.items()) != 1:
            return None
        (kn, cn), = num.items()
        (kd, cd), = den.items()
        if cn / cd != 1:
            return None
        t = kn - kd
        if t % e:
            return None
        return t // e
    ratio = qq(ratio)
    step = p ** e
    mag = abs(qq(ratio))
    big = max(mag, 1 / mag)
    acc_up, acc_down = qq(1), qq(1)
    i = 0
    while True:
        i += 1
        acc_up *= step
        acc_down /= step
        if acc_up == ratio:
            return i
        if acc_down == ratio:
            return -i
        if max(abs(acc_up), abs(acc_down)) > big:
            return None


def same_orbit(ring, q1, q2):
    """Integer i with sigma^i(q1) associate to q2, or None."""
    a = _as_point(ring, q1).q
    b = _as_point(ring, q2).q
    if a.degree != b.degree:
        return None
    n = a.degree
    if a == b:
        return 0
    if ring.kind == ADDITIVE:
        # the u^(n-1) coefficient of a(u+i) is a_{n-1} + n*i
        i = (qq(b.coeff(n - 1)) - qq(a.coeff(n - 1))) / n
        if i.denominator != 1:
            return None
        i = int(i)
        return i if a.shift(i) == b else None
    # monic sigma^i(a) has coefficients a_k p^(i(k-n))
    for k in range(n):
        ak = a.coeff(k)
        bk = b.coeff(k)
        if (ak == 0) != (bk == 0):
            return None
        if ak == 0:
            continue
        i = _power_exponent(ring, bk / ak, k - n)
        if i is None:
            return None
        return i if apply_sigma(ring, a, i).monic() == b else None
    return None


class TorusDescriptor:
    """Torus of dimension d with sigma acting by x1 -> x1 + 1 (optional) and
    x_i -> p_i x_i on the multiplicative coordinates."""

    def __init__(self, dim, params, has_additive_coordinate=False, names=None):
        self.dim = int(dim)
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(self.dim))
        if len(self.names) != self.dim:
            raise ValueError("one coordinate name per dimension")
        self.additive = bool(has_additive_coordinate)
        self.params = tuple(qq(p) for p in params)
        expected = self.dim - (1 if self.additive else 0)
        if self.dim < 1:
            raise ValueError("torus dimension must be positive")
        if len(self.params) != expected:
            raise ValueError(
                f"expected {expected} multiplicative parameters, got {len(self.params)}"
            )
        if any(p == 0 for p in self.params):
            raise ValueError("torus parameters must be nonzero")
        if not params_free_abelian(self.params):
            raise ValueError("parameters do not generate a free abelian group of full rank")

    @property
    def mult_count(self):
        return len(self.params)

    def __repr__(self):
        kind = "A" if self.additive else "B"
        return f"TorusDescriptor({kind}, dim={self.dim}, params={[str(p) for p in self.params]})"


def _factor_int(n):
    n = abs(int(n))
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _exact_rank(rows):
    """Rank of an integer matrix by fraction-free elimination."""
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                a, b = mat[rank][col], mat[r][col]
                mat[r] = [a * x - b * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def params_free_abelian(params):
    """True when the rationals p_i satisfy no relation prod p_i^(n_i) = 1 with
    integer n_i not all zero, i.e. they are multiplicatively independent."""
    if not params:
        return True
    primes = set()
    facts = []
    for p in params:
        num = _factor_int(p.numerator)
        den = _factor_int(p.denominator)
        facts.append((num, den))
        primes.update(num)
        primes.update(den)
    primes = sorted(primes)
    rows = []
    for num, den in facts:
        rows.append([num.get(r, 0) - den.get(r, 0) for r in primes])
    if not primes:
        return False
    # a relation means the valuation vectors are dependent; signs are units
    # of order two and only matter for p = -1, which has zero valuation row
    return _exact_rank(rows) == len(params)
