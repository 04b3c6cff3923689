"""Deciding sigma-loneliness: Z and sigma^i(Z) disjoint for every i != 0.

One variable: an additive shift test on roots (integer differences) or a
multiplicative test on root ratios (powers of rho).  Several variables: a
hypersurface f = 0 in a torus is lonely only when f depends on the
additive coordinate alone, or when its support lies on a line through the
origin, reducing f to a polynomial in one monomial z.
"""

from itertools import combinations, product
from math import gcd

from .exact import Frac, Poly, root_bound, poly_gcd, qq, rational_roots, resultant
from .parsing import parse_expr
from .sigma import (
    ADDITIVE,
    CERTIFIED,
    WINDOWED,
    OrbitPoint,
    integer_log,
    same_orbit,
)

__all__ = [
    "LonelyVerdict",
    "MultiPoly",
    "is_lonely_additive",
    "is_lonely_multiplicative",
    "is_lonely_poly",
    "lattice_line_reduce",
    "is_lonely",
    "is_lonely_points",
    "validate_witness",
]

SYMBOLIC_WINDOW = 64


class LonelyVerdict:
    """Outcome of a loneliness test; a negative answer carries a witness."""

    def __init__(self, lonely, witness=None, certificate=CERTIFIED):
        if not lonely and witness is None:
            raise ValueError("a non-lonely verdict needs a witness")
        self.lonely = bool(lonely)
        self.witness = witness
        self.certificate = certificate

    def __bool__(self):
        return self.lonely

    def to_json(self):
        out = {"lonely": self.lonely, "certificate": self.certificate}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out

    def __repr__(self):
        return f"LonelyVerdict(lonely={self.lonely}, witness={self.witness}, {self.certificate})"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


def is_lonely_additive(f):
    """sigma(u) = u + 1: V(f) is lonely iff no two roots differ by an integer.

    Two roots a, b with b - a = n force |n| <= |a| + |b| <= 2 B for a root
    bound B, so testing Res(f(u), f(u + n)) for 1 <= n <= 2B is complete.
    """
    if f.degree < 1:
        raise ValueError("constant polynomial")
    bound = int(2 * root_bound(f))
    for n in range(1, bound + 1):
        if resultant(f, f.shift(n)) == 0:
            return LonelyVerdict(False, {"shift": n})
    return LonelyVerdict(True)


def _ratio_bound(f):
    upper = root_bound(f)
    lower = 1 / root_bound(f.reverse())
    return upper / lower


def _is_symbolic(rho):
    return isinstance(rho, Frac) and not rho.is_rational()


def is_lonely_multiplicative(f, rho):
    """sigma(z) = rho*z: V(f) is lonely iff no ratio of roots is a nonzero
    power of rho.  ``f`` must have a nonzero constant term."""
    if f.degree < 1:
        raise ValueError("constant polynomial")
    if f.coeff(0) == 0:
        raise ValueError("normalize first: constant term is zero")
    if _is_symbolic(rho):
        return _lonely_symbolic(f, rho)
    rho = qq(rho)
    if rho == 0 or abs(rho) == 1:
        raise ValueError("rho must be nonzero and not of absolute value one")
    base = abs(rho) if abs(rho) > 1 else 1 / abs(rho)
    K = integer_log(base, _ratio_bound(f))
    for n in range(1, K + 1):
        if resultant(f, f.scale(rho ** n)) == 0:
            return LonelyVerdict(False, {"shift": n})
    return LonelyVerdict(True)


def _lonely_symbolic(f, rho):
    if all(not isinstance(c, Frac) or c.is_rational() for c in f.c):
        # algebraic roots a, b with b = p^n a would make p algebraic
        return LonelyVerdict(True)
    if f.degree == 1:
        return LonelyVerdict(True)
    for n in range(1, SYMBOLIC_WINDOW + 1):
        if resultant(f, f.scale(rho ** n)) == 0:
            return LonelyVerdict(False, {"shift": n}, WINDOWED)
    return LonelyVerdict(True, None, WINDOWED)


def is_lonely_poly(ring, f):
    """Loneliness of V(f) on a line (additive or multiplicative)."""
    if isinstance(f, OrbitPoint):
        f = f.q
    f = ring.normalize(f)
    if f.degree < 1:
        return LonelyVerdict(True)
    if ring.kind == ADDITIVE:
        return is_lonely_additive(f)
    return is_lonely_multiplicative(f, ring.p)


def is_lonely_points(ring, points):
    """A finite set of points is lonely iff no two distinct ones share an
    orbit."""
    points = [p if isinstance(p, OrbitPoint) else OrbitPoint(p, ring) for p in points]
    if not points:
        raise ValueError("empty point set")
    for a, b in combinations(points, 2):
        if a.q == b.q:
            continue
        i = same_orbit(ring, a, b)
        if i is not None:
            return LonelyVerdict(False, {"points": [str(a), str(b)], "shift": i})
    return LonelyVerdict(True)


# -- several variables -------------------------------------------------------


class MultiPoly:
    """Laurent polynomial on a torus: exponent vector -> rational coefficient.

    With an additive coordinate, the first coordinate is x1 (nonnegative
    exponents) and sigma acts by x1 -> x1 + 1; the others scale by p_i.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        self.dim = dim
        out = {}
        for k, v in (terms or {}).items():
            k = tuple(int(e) for e in k)
            if len(k) != dim:
                raise ValueError("exponent vector of the wrong length")
            v = qq(v)
            if v:
                out[k] = out.get(k, 0) + v
        self.terms = {k: v for k, v in out.items() if v}

    @classmethod
    def from_expr(cls, expr, names):
        """Build from a parsed expression given the coordinate names."""
        if isinstance(expr, str):
            expr = parse_expr(expr)
        index = {n: i for i, n in enumerate(names)}
        extra = expr.variables() - set(index)
        if extra:
            raise ValueError(f"unknown variable(s) {sorted(extra)}; coordinates are {list(names)}")
        terms = {}
        for key, c in expr.terms.items():
            if isinstance(c, Frac) and not c.is_rational():
                raise ValueError("torus coefficients must be rational")
            vec = [0] * len(names)
            for name, e in key:
                vec[index[name]] = e
            terms[tuple(vec)] = qq(c)
        return cls(len(names), terms)

    def support(self):
        return sorted(self.terms)

    def is_constant(self):
        return all(not any(k) for k in self.terms)

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MultiPoly(self.dim, out)

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return MultiPoly(self.dim, out)

    def normalized(self, skip_first=False):
        """Divide by the monomial of the lexicographically least term so the
        support contains the origin (the first coordinate is left alone when
        ``skip_first``, since x1 is not a unit on the additive line)."""
        if not self.terms:
            return self
        low = min(self.terms)
        if skip_first:
            low = (0,) + low[1:]
        return MultiPoly(
            self.dim, {tuple(a - b for a, b in zip(k, low)): v for k, v in self.terms.items()}
        )

    def __call__(self, point):
        total = qq(0)
        for k, v in self.terms.items():
            term = v
            for x, e in zip(point, k):
                term = term * qq(x) ** e
            total += term
        return total

    def sigma(self, torus, n):
        """sigma^n(f) for the torus action."""
        params = torus.params
        out = {}
        for k, v in self.terms.items():
            scale = qq(1)
            mult = k[1:] if torus.additive else k
            for pj, e in zip(params, mult):
                scale = scale * pj ** (n * e)
            if torus.additive and k[0]:
                # (x1 + n)^a expanded
                a = k[0]
                binom = 1
                for r in range(a + 1):
                    key = (r,) + k[1:]
                    out[key] = out.get(key, 0) + v * scale * binom * qq(n) ** (a - r)
                    binom = binom * (a - r) // (r + 1)
            else:
                out[k] = out.get(k, 0) + v * scale
        return MultiPoly(self.dim, out)

    def __repr__(self):
        parts = []
        for k in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i + 1}^{e}" if e != 1 else f"x{i + 1}" for i, e in enumerate(k) if e)
            parts.append(f"{self.terms[k]}" + (f"*{mono}" if mono else ""))
        return "MultiPoly(" + " + ".join(parts or ["0"]) + ")"


def _primitive(vec):
    g = 0
    for e in vec:
        g = gcd(g, e)
    v = [e // g for e in vec]
    for e in v:
        if e:
            if e < 0:
                v = [-x for x in v]
            break
    return tuple(v)


def lattice_line_reduce(f):
    """If the support of f (after moving its least term to the origin) lies
    on a line through the origin, return (v, g) with v primitive and
    f.normalized() = g(x^v); otherwise None."""
    f = f.normalized()
    if f.is_constant():
        raise ValueError("constant polynomial has no direction")
    vecs = [k for k in f.support() if any(k)]
    v = _primitive(vecs[0])
    coeffs = {}
    for k, c in f.terms.items():
        mult = None
        for a, b in zip(k, v):
            if b == 0:
                if a != 0:
                    return None
                continue
            if a % b:
                return None
            m = a // b
            if mult is None:
                mult = m
            elif mult != m:
                return None
        coeffs[mult or 0] = c
    low = min(coeffs)
    g = Poly({e - low: c for e, c in coeffs.items()}, "z")
    return v, g


def substitute_monomial(g, v, dim):
    """g(x^v) as a MultiPoly."""
    return MultiPoly(dim, {tuple(e * x for x in v): c for e, c in g.items()})


def _rho(torus, v):
    rho = qq(1)
    for pj, e in zip(torus.params, v):
        rho = rho * pj ** e
    return rho


_SMALL = [qq(x) for x in ("1", "-1", "2", "-2", "1/2", "-1/2", "3", "-3")]


def _to_bivariate(f, i, j, fixed):
    """Specialize all coordinates except i and j; return a Poly in b (var
    'b') with coefficients Frac in a (var 'a'), cleared of negative powers."""
    terms = {}
    for k, c in f.terms.items():
        val = c
        for idx, e in enumerate(k):
            if idx not in (i, j):
                val = val * fixed[idx] ** e
        key = (k[i], k[j])
        terms[key] = terms.get(key, 0) + val
    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        return None
    lo_a = min(k[0] for k in terms)
    lo_b = min(k[1] for k in terms)
    by_b = {}
    for (ea, eb), c in terms.items():
        by_b.setdefault(eb - lo_b, {})[ea - lo_a] = c
    top = max(by_b)
    coeffs = []
    for eb in range(top + 1):
        coeffs.append(Frac(Poly(by_b.get(eb, {}), "a")))
    return Poly(coeffs, "b")


def _poly_in_b_at(F, a0):
    return Poly([c.num(a0) / c.den(a0) for c in F.c], "b")


def _safe_roots(poly):
    try:
        return rational_roots(poly)
    except (OverflowError, ValueError):
        return []


def _solve_pair(F, G):
    """Rational solutions (a, b), both nonzero, of F = G = 0."""
    sols = []
    if F.degree < 1 and G.degree < 1:
        return sols
    candidates_a = []
    if F.degree >= 1 and G.degree >= 1:
        res = resultant(F, G)
        if res != 0:
            res = res if isinstance(res, Frac) else Frac(Poly((res,), "a"))
            candidates_a = _safe_roots(res.num) if res.num.degree >= 1 else []
        else:
            candidates_a = list(_SMALL)
    else:
        one = F if F.degree < 1 else G
        cst = one.coeff(0) if one.c else None
        if cst is not None:
            cst = cst if isinstance(cst, Frac) else Frac(Poly((cst,), "a"))
            candidates_a = _safe_roots(cst.num) if cst.num.degree >= 1 else []
    for a0 in candidates_a:
        if a0 == 0:
            continue
        try:
            fa = _poly_in_b_at(F, a0)
            ga = _poly_in_b_at(G, a0)
        except ZeroDivisionError:
            continue
        if not fa and not ga:
            bs = [b for b in _SMALL]
        elif not fa or not ga:
            bs = _safe_roots(fa or ga) if (fa or ga).degree >= 1 else []
        else:
            common = poly_gcd(fa, ga)
            bs = _safe_roots(common) if common.degree >= 1 else []
        for b0 in bs:
            if b0 != 0:
                sols.append((a0, b0))
    return sols


def _find_point(torus, f, max_shift=3):
    """Best-effort rational point P (nonzero coordinates) with
    f(P) = sigma^n(f)(P) = 0 for some 1 <= n <= max_shift."""
    dim = f.dim
    involved = [i for i in range(dim) if any(k[i] for k in f.terms)]
    if len(involved) < 2:
        return None
    pairs = list(combinations(involved, 2))
    others_all = [i for i in range(dim)]
    for n in range(1, max_shift + 1):
        g = f.sigma(torus, n)
        for i, j in pairs:
            others = [k for k in others_all if k not in (i, j)]
            choices = product(_SMALL[:4], repeat=len(others)) if others else [()]
            for vals in choices:
                fixed = dict(zip(others, vals))
                F = _to_bivariate(f, i, j, fixed)
                Gb = _to_bivariate(g, i, j, fixed)
                if F is None or Gb is None:
                    continue
                for a0, b0 in _solve_pair(F, Gb):
                    point = [qq(1)] * dim
                    for k, v in fixed.items():
                        point[k] = v
                    point[i], point[j] = a0, b0
                    if f(point) == 0 and g(point) == 0:
                        return {"point": point, "shift": n}
    return None


def _additive_point_ok(torus, point):
    mult = point[1:] if torus.additive else point
    return all(x != 0 for x in mult)


def validate_witness(torus, f, verdict):
    """Re-check a non-lonely witness exactly."""
    w = verdict.witness
    if verdict.lonely or w is None:
        return True
    if "point" in w:
        point = [qq(x) for x in w["point"]]
        g = f.sigma(torus, w["shift"])
        return f(point) == 0 and g(point) == 0 and _additive_point_ok(torus, point)
    if "direction" in w:
        v = tuple(w["direction"])
        g = w["reduced"]
        rho = _rho(torus, v)
        return resultant(g, g.scale(rho ** w["shift"])) == 0
    if "vectors" in w:
        a, b = w["vectors"]
        return any(a[i] * b[k] - a[k] * b[i] for i in range(len(a)) for k in range(len(a)))
    if "shift" in w and "univariate" in w:
        g = w["univariate"]
        return resultant(g, g.shift(w["shift"])) == 0
    return False


def is_lonely(torus, f):
    """Loneliness of the hypersurface f = 0 in the torus."""
    if isinstance(f, str):
        f = MultiPoly.from_expr(f, torus_names(torus))
    if f.dim != torus.dim:
        raise ValueError(f"polynomial has {f.dim} coordinates, torus has {torus.dim}")
    f = f.normalized(skip_first=torus.additive)
    if f.is_constant() or not f.terms:
        raise ValueError("f must be a nonzero non-unit")
    uses_first = torus.additive and any(k[0] for k in f.terms)
    uses_mult = any(any(k[1:] if torus.additive else k) for k in f.terms)
    if uses_first and not uses_mult:
        g = Poly({k[0]: c for k, c in f.terms.items()}, "u")
        v = is_lonely_additive(g)
        if not v.lonely:
            v.witness = {"shift": v.witness["shift"], "univariate": g}
        return v
    if uses_first and uses_mult:
        w = _find_point(torus, f)
        if w is None:
            a = next(k for k in f.support() if k[0])
            b = next(k for k in f.support() if any(k[1:]))
            w = {"reason": "mixed additive and multiplicative coordinates", "vectors": [a, b]}
            if not any(a[i] * b[k] - a[k] * b[i] for i in range(len(a)) for k in range(len(a))):
                w["vectors"] = [a, tuple(1 if i == 0 else e for i, e in enumerate(b))]
        return LonelyVerdict(False, w)
    if torus.additive:
        mult = MultiPoly(torus.dim - 1, {k[1:]: c for k, c in f.terms.items()})
    else:
        mult = f
    reduced = lattice_line_reduce(mult)
    if reduced is None:
        w = _find_point(torus, f)
        if w is None:
            vecs = [k for k in mult.normalized().support() if any(k)]
            pair = _independent_pair(vecs)
            w = {"reason": "support not on a line through the origin", "vectors": list(pair)}
        return LonelyVerdict(False, w)
    v, g = reduced
    rho = _rho(torus, v)
    verdict = is_lonely_multiplicative(g, rho)
    if not verdict.lonely:
        verdict.witness = {"shift": verdict.witness["shift"], "direction": list(v), "reduced": g, "rho": rho}
    return verdict


def _independent_pair(vecs):
    for a, b in combinations(vecs, 2):
        if any(a[i] * b[k] - a[k] * b[i] for i in range(len(a)) for k in range(len(a))):
            return a, b
    raise AssertionError("support is collinear")


def torus_names(torus):
    names = getattr(torus, "names", None)
    if names:
        return tuple(names)
    return tuple(f"x{i + 1}" for i in range(torus.dim))


__all__ += ["substitute_monomial", "torus_names"]
