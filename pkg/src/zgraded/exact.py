"""Exact arithmetic: rationals, univariate polynomials, Laurent polynomials
and fractions of polynomials.

Rational scalars are ``gmpy2.mpq``.  The field Q(p) of rational functions in
a transcendental parameter is a :class:`Frac` whose numerator and denominator
are polynomials in ``p`` over Q, so the same polynomial code runs over both
coefficient fields.
"""

from fractions import Fraction
from numbers import Integral

from gmpy2 import gcd, iroot, lcm, mpq, mpz

__all__ = [
    "qq",
    "Poly",
    "Frac",
    "LaurentPoly",
    "poly_gcd",
    "poly_lcm",
    "resultant",
    "cauchy_root_bound",
    "root_bound",
    "laurent_normalize",
    "rational_roots",
    "is_rational",
    "symbolic_p",
]

_ZERO = mpq(0)
_ONE = mpq(1)


def qq(x):
    """Coerce ``x`` to an exact rational (``mpq``).

    Accepts ints, ``Fraction``, ``mpq`` and strings such as ``"3/4"``.
    A :class:`Frac` that is a rational constant is unwrapped.
    """
    if isinstance(x, Frac):
        if x.is_rational():
            return x.num.coeff(0)
        raise TypeError(f"{x} is not a rational number")
    if isinstance(x, float):
        raise TypeError("floating point values are not exact")
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _coerce(x):
    if isinstance(x, Frac):
        return x
    if isinstance(x, (Integral, Fraction)) or type(x) is type(_ZERO):
        return qq(x)
    raise TypeError(f"unsupported coefficient {x!r}")


def is_rational(x):
    """True for scalars in Q (as opposed to non-constant elements of Q(p))."""
    if isinstance(x, Frac):
        return x.is_rational()
    return True


class Poly:
    """Dense univariate polynomial with exact field coefficients.

    Coefficients are stored low degree first with no trailing zeros.  The
    zero polynomial has ``degree == -1``.
    """

    __slots__ = ("c", "var")

    def __init__(self, coeffs=(), var="u"):
        if isinstance(coeffs, dict):
            top = max((k for k, v in coeffs.items() if v != 0), default=-1)
            lst = [_ZERO] * (top + 1)
            for k, v in coeffs.items():
                if k < 0:
                    raise ValueError("negative exponent in a polynomial")
                if k <= top:
                    lst[k] = _coerce(v)
        else:
            lst = [_coerce(v) for v in coeffs]
        while lst and lst[-1] == 0:
            lst.pop()
        self.c = tuple(lst)
        self.var = var

    @classmethod
    def _raw(cls, lst, var):
        while lst and lst[-1] == 0:
            lst.pop()
        obj = cls.__new__(cls)
        obj.c = tuple(lst)
        obj.var = var
        return obj

    @classmethod
    def const(cls, c, var="u"):
        return cls((c,), var)

    @classmethod
    def gen(cls, var="u"):
        return cls((0, 1), var)

    @classmethod
    def monomial(cls, c, k, var="u"):
        return cls._raw([_ZERO] * k + [_coerce(c)], var)

    @classmethod
    def from_roots(cls, roots, var="u"):
        out = cls.const(1, var)
        for r in roots:
            out = out * cls((-_coerce(r), 1), var)
        return out

    # -- basic accessors -------------------------------------------------
    @property
    def degree(self):
        return len(self.c) - 1

    @property
    def lc(self):
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def coeff(self, k):
        return self.c[k] if 0 <= k < len(self.c) else _ZERO

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_constant(self):
        return len(self.c) <= 1

    def is_one(self):
        return len(self.c) == 1 and self.c[0] == 1

    def items(self):
        return [(k, v) for k, v in enumerate(self.c) if v != 0]

    def with_var(self, var):
        return Poly._raw(list(self.c), var)

    # -- arithmetic --------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly((other,), self.var)

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return Poly._raw(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-v for v in self.c], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = _coerce(other)
            if other == 0:
                return Poly._raw([], self.var)
            return Poly._raw([v * other for v in self.c], self.var)
        a, b = self.c, other.c
        if not a or not b:
            return Poly._raw([], self.var)
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly._raw(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly((1,), self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __divmod__(self, other):
        other = self._lift(other)
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        b = other.c
        db = len(b) - 1
        rem = list(self.c)
        if len(rem) - 1 < db:
            return Poly._raw([], self.var), Poly._raw(rem, self.var)
        inv = 1 / b[-1]
        monic = b[-1] == 1
        quo = [_ZERO] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            if not monic:
                c = c * inv
            quo[k - db] = c
            off = k - db
            for i in range(db):
                rem[off + i] -= c * b[i]
            rem[k] = _ZERO
        return Poly._raw(quo, self.var), Poly._raw(rem[:db], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        """True when ``self`` divides ``other``."""
        if not self.c:
            return not other.c
        return not (other % self).c

    def monic(self):
        if not self.c:
            return self
        lead = self.c[-1]
        if lead == 1:
            return self
        inv = 1 / lead
        return Poly._raw([v * inv for v in self.c], self.var)

    def __call__(self, x):
        acc = _ZERO
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def shift(self, m):
        """Return f(u + m) (Taylor shift)."""
        if m == 0 or len(self.c) <= 1:
            return self
        m = _coerce(m)
        out = list(self.c)
        n = len(out)
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                out[k] += m * out[k + 1]
        return Poly._raw(out, self.var)

    def scale(self, c):
        """Return f(c * u): the coefficient of u^k is multiplied by c^k."""
        out = []
        pw = _ONE
        for v in self.c:
            out.append(v * pw)
            pw = pw * c
        return Poly._raw(out, self.var)

    def derivative(self):
        return Poly._raw([v * k for k, v in enumerate(self.c)][1:], self.var)

    def reverse(self):
        """The reciprocal polynomial u^deg f(1/u)."""
        return Poly._raw(list(reversed(self.c)), self.var)

    def squarefree_part(self):
        if self.degree < 1:
            return Poly((1,), self.var)
        return self.exact_div(poly_gcd(self, self.derivative())).monic()

    def low_degree(self):
        """Exponent of the lowest nonzero term."""
        for k, v in enumerate(self.c):
            if v != 0:
                return k
        raise ValueError("zero polynomial")

    # -- comparison and printing ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, LaurentPoly):
            return other == self
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.c == ((other,) if other != 0 else ())

    def __hash__(self):
        if len(self.c) <= 1:
            return hash(self.c[0]) if self.c else 0
        return hash(self.c)

    def __str__(self):
        return _format_terms(self.items()[::-1], self.var)

    def __repr__(self):
        return f"Poly({self})"


def _format_coeff(c):
    if isinstance(c, Frac) and not c.is_rational():
        return "(" + str(c) + ")", False
    return str(qq(c)), True


def _format_terms(terms, var):
    """Render (exponent, coefficient) pairs, already in display order."""
    if not terms:
        return "0"
    parts = []
    for k, c in terms:
        text, rational = _format_coeff(c)
        neg = False
        if rational and text.startswith("-"):
            neg = True
            text = text[1:]
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono:
            if text == "1":
                body = mono
            else:
                body = f"{text}*{mono}"
        else:
            body = text
        parts.append((neg, body))
    first_neg, first = parts[0]
    out = ("-" if first_neg else "") + first
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def poly_gcd(a, b):
    """Monic greatest common divisor of two polynomials."""
    if not a and not b:
        raise ValueError("gcd undefined")
    if not a or not b:
        return (a or b).monic()
    if all(isinstance(v, type(_ONE)) for v in a.c + b.c):
        return _integer_gcd(a, b)
    # symbolic coefficients: Euclid, normalizing each remainder
    a, b = a.monic(), b.monic()
    while b:
        a, b = b, (a % b).monic()
    return a


def _primitive_ints(c):
    """Integer coefficients with content 1, proportional to rational ``c``."""
    den = mpz(1)
    for v in c:
        den = lcm(den, v.denominator)
    ints = [mpz(v * den) for v in c]
    g = mpz(0)
    for v in ints:
        g = gcd(g, v)
        if g == 1:
            break
    return [v // g for v in ints] if g > 1 else ints


def _integer_gcd(a, b):
    # primitive remainder sequence over Z: pseudo-remainders with the content
    # removed at every step keep coefficient growth in check
    x, y = _primitive_ints(a.c), _primitive_ints(b.c)
    if len(x) < len(y):
        x, y = y, x
    while len(y) > 1:
        r = list(x)
        lead = y[-1]
        dy = len(y) - 1
        while len(r) - 1 >= dy and r:
            c = r[-1]
            shift = len(r) - 1 - dy
            r = [v * lead for v in r]
            for i in range(dy + 1):
                r[shift + i] -= c * y[i]
            while r and not r[-1]:
                r.pop()
        if not r:
            return Poly._raw([mpq(v) for v in y], a.var).monic()
        x, y = y, _primitive_ints([mpq(v) for v in r])
    # y is a nonzero constant: coprime
    return Poly((1,), a.var)


def poly_lcm(a, b):
    if not a or not b:
        raise ValueError("lcm of zero polynomial")
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def resultant(a, b):
    """Res_u(a, b) by the subresultant polynomial remainder sequence."""
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    da, db = a.degree, b.degree
    sign = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            sign = -sign
    if db == 0:
        return sign * b.lc ** da
    g = _ONE
    h = _ONE
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            sign = -sign
        r = (a % b) * b.lc ** (delta + 1)
        if not r:
            return _ZERO
        a = b
        b = r * (1 / (g * h ** delta))
        g = a.lc
        h = g ** delta / h ** (delta - 1) if delta else h
        if b.degree == 0:
            dega = a.degree
            h = b.lc ** dega / h ** (dega - 1)
            return sign * h


def cauchy_root_bound(a):
    """Rational B with |alpha| <= B for every complex root alpha of ``a``."""
    if a.degree < 1:
        raise ValueError("root bound of a constant polynomial")
    lead = qq(a.lc)
    return 1 + max(abs(qq(v) / lead) for v in a.c[:-1])


def _root_ceiling(x, k):
    """Rational upper bound for the real k-th root of a rational x >= 0."""
    if x == 0:
        return _ZERO
    num, den = int(x.numerator), int(x.denominator)
    # (num/den)^(1/k) = (num * den^(k-1))^(1/k) / den
    r, exact = iroot(mpz(num) * mpz(den) ** (k - 1), k)
    return mpq(int(r) + (0 if exact else 1), den)


def _fujiwara(a):
    lead = qq(a.lc)
    n = a.degree
    best = _ZERO
    for k in range(1, n + 1):
        t = abs(qq(a.coeff(n - k)) / lead)
        if k == n:
            t = t / 2
        best = max(best, _root_ceiling(t, k))
    return 2 * best


def _graeffe(a):
    """Polynomial whose roots are the squares of the roots of a."""
    even = Poly._raw(list(a.c[0::2]), a.var)
    odd = Poly._raw(list(a.c[1::2]), a.var)
    sq = even * even - (odd * odd) * Poly.gen(a.var)
    return sq if a.degree % 2 == 0 else -sq


def root_bound(a, refine=3):
    """Rational B with |alpha| <= B for every root alpha of ``a`` over Q.

    Takes the smaller of the Cauchy bound and a Fujiwara bound sharpened by
    ``refine`` root-squaring (Graeffe) steps, which brings the overshoot
    factor from up to 2n down to about (2n)^(1/2^refine).
    """
    if a.degree < 1:
        raise ValueError("root bound of a constant polynomial")
    best = cauchy_root_bound(a)
    if any(isinstance(v, Frac) for v in a.c):
        return best
    g = a
    best = min(best, _fujiwara(g))
    for step in range(1, refine + 1):
        g = _graeffe(g)
        best = min(best, _root_ceiling(_fujiwara(g), 2 ** step))
    return best


def _int_divisors(n, limit=10**12):
    n = abs(int(n))
    if n == 0:
        raise ValueError("divisors of zero")
    if n > limit:
        raise OverflowError("integer too large for divisor enumeration")
    small = []
    large = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(a):
    """Distinct rational roots of a polynomial over Q (rational root test)."""
    if not a:
        raise ValueError("roots of the zero polynomial")
    roots = []
    k = a.low_degree()
    if k:
        roots.append(_ZERO)
    coeffs = [qq(v) for v in a.c[k:]]
    if len(coeffs) <= 1:
        return roots
    den = 1
    for v in coeffs:
        den = den * int(v.denominator) // _gcd(den, int(v.denominator))
    ints = [int(v * den) for v in coeffs]
    core = Poly(ints, a.var)
    for pnum in _int_divisors(ints[0]):
        for qden in _int_divisors(ints[-1]):
            for cand in (mpq(pnum, qden), mpq(-pnum, qden)):
                if core(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _gcd(x, y):
    while y:
        x, y = y, x % y
    return abs(x)


class Frac:
    """Reduced quotient num/den of polynomials over a field.

    Denominators are monic.  Used both for the scalar field Q(p) (polynomials
    in ``p``) and for elements of the fraction field of T.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            raise TypeError("numerator must be a Poly")
        if den is None:
            den = Poly((1,), num.var)
        elif not isinstance(den, Poly):
            den = Poly((den,), num.var)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num = Poly((), num.var)
            self.den = Poly((1,), num.var)
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lead = den.lc
        if lead != 1:
            num = num * (1 / lead)
            den = den.monic()
        self.num = num
        self.den = den

    @property
    def var(self):
        return self.num.var

    def _lift(self, other):
        if isinstance(other, Frac):
            return other
        if isinstance(other, Poly):
            return Frac(other)
        return Frac(Poly((other,), self.var))

    def is_rational(self):
        return self.den.degree == 0 and self.num.degree <= 0

    def is_polynomial(self):
        return self.den.degree == 0

    def __add__(self, other):
        other = self._lift(other)
        if self.den == other.den:
            return Frac(self.num + other.num, self.den)
        return Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = Frac.__new__(Frac)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Poly) and other.var != self.var:
            return NotImplemented
        other = self._lift(other)
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return Frac(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return Frac(self.den ** (-n), self.num ** (-n))
        return Frac(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, Frac):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Poly):
            return self.den.is_one() and self.num == other
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.den.is_one() and self.num == other

    def __hash__(self):
        if self.den.is_one():
            return hash(self.num)
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.items()) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den.items()) > 1 or self.den.lc != 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Frac({self})"

    def apply(self, fn):
        """Apply a ring map given on polynomials to numerator and denominator."""
        return Frac(fn(self.num), fn(self.den))


def symbolic_p():
    """The transcendental parameter p as an element of Q(p)."""
    return Frac(Poly((0, 1), "p"))


class LaurentPoly:
    """Element of F[u, 1/u], stored as u^shift * core with core(0) != 0."""

    __slots__ = ("shift", "core")

    def __init__(self, core, shift=0):
        if not isinstance(core, Poly):
            core = Poly((core,))
        if not core:
            self.core = core
            self.shift = 0
            return
        low = core.low_degree()
        if low:
            core = Poly._raw(list(core.c[low:]), core.var)
        self.core = core
        self.shift = shift + low

    @classmethod
    def from_dict(cls, terms, var="u"):
        terms = {k: v for k, v in terms.items() if v != 0}
        if not terms:
            return cls(Poly((), var))
        low = min(terms)
        return cls(Poly({k - low: v for k, v in terms.items()}, var), low)

    @property
    def var(self):
        return self.core.var

    def to_dict(self):
        return {k + self.shift: v for k, v in self.core.items()}

    def is_zero(self):
        return not self.core

    def __bool__(self):
        return bool(self.core)

    def is_unit(self):
        return self.core.degree == 0

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, Poly):
            return LaurentPoly(other)
        return LaurentPoly(Poly((other,), self.var))

    def __add__(self, other):
        other = self._lift(other)
        terms = self.to_dict()
        for k, v in other.to_dict().items():
            terms[k] = terms.get(k, _ZERO) + v
        return LaurentPoly.from_dict(terms, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(-self.core, self.shift)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return LaurentPoly(self.core * other.core, self.shift + other.shift)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            return LaurentPoly(Poly((1 / self.core.c[0] ** (-n),), self.var), self.shift * n)
        return LaurentPoly(self.core ** n, self.shift * n)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.shift == other.shift and self.core == other.core
        if isinstance(other, Poly):
            return self == LaurentPoly(other)
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self == LaurentPoly(Poly((other,), self.var))

    def __hash__(self):
        if self.shift == 0:
            return hash(self.core)
        return hash((self.shift, self.core))

    def __str__(self):
        terms = sorted(self.to_dict().items(), reverse=True)
        return _format_terms(terms, self.var)

    def __repr__(self):
        return f"LaurentPoly({self})"


def laurent_normalize(a):
    """Split a nonzero Laurent polynomial as ``(k, core)`` with a = u^k * core."""
    if isinstance(a, Poly):
        a = LaurentPoly(a)
    if not a:
        raise ValueError("cannot normalize the zero Laurent polynomial")
    return a.shift, a.core
