"""Text grammar for polynomials.

Variables ``u``, ``z``, ``x1``..``xd`` are ring variables; ``p`` is the
symbolic parameter and lands in the coefficients.  Operators are
``+ - * / ^`` (``**`` is accepted for ``^``) with parentheses.  Division is
allowed by scalars and by monomials; negative exponents only on monomials.
"""

import re

from .exact import Frac, LaurentPoly, Poly, qq, symbolic_p

__all__ = [
    "ParseError",
    "Expr",
    "parse_expr",
    "parse_poly",
    "parse_laurent",
    "parse_fraction",
]


class ParseError(ValueError):
    """Malformed input; ``pos`` is the character offset of the problem."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)
_VAR = re.compile(r"^(u|z|x[1-9][0-9]*)$")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "op" and val == "**":
            val = "^"
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class Expr:
    """Laurent polynomial in named variables with coefficients in Q(p).

    Keys are tuples of (variable, exponent) pairs sorted by name.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): qq(1)})

    def variables(self):
        out = set()
        for key in self.terms:
            out.update(name for name, _ in key)
        return out

    def is_scalar(self):
        return all(not key for key in self.terms)

    def scalar_value(self):
        return self.terms.get((), qq(0))

    def is_monomial(self):
        return len(self.terms) == 1

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Expr(out)

    def __neg__(self):
        return Expr({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = _merge(k1, k2)
                out[key] = out.get(key, 0) + v1 * v2
        return Expr(out)

    def inverse_monomial(self):
        (key, c), = self.terms.items()
        return Expr({tuple((n, -e) for n, e in key): 1 / c})

    def __pow__(self, n):
        if n < 0:
            return self.inverse_monomial() ** (-n)
        out = Expr.scalar(qq(1))
        for _ in range(n):
            out = out * self
        return out


def _merge(k1, k2):
    acc = dict(k1)
    for name, e in k2:
        acc[name] = acc.get(name, 0) + e
    return tuple(sorted((n, e) for n, e in acc.items() if e))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, val):
        tok = self.take()
        if tok[1] != val:
            raise ParseError(f"expected {val!r}", tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        e = self.sum()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return e

    def sum(self):
        e = self.product()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            e = e + rhs if op == "+" else e - rhs
        return e

    def product(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/"):
            op, _, pos = self.take()[1], None, self.peek()[2]
            rhs = self.unary()
            if op == "*":
                e = e * rhs
            else:
                if not rhs.terms:
                    raise ParseError("division by zero", pos, self.text)
                if not rhs.is_monomial():
                    if rhs.is_scalar():
                        e = e * Expr.scalar(1 / rhs.scalar_value())
                        continue
                    raise ParseError("division by a non-monomial", pos, self.text)
                e = e * rhs.inverse_monomial()
        return e

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] in ("-", "+"):
                sign = -1 if self.take()[1] == "-" else 1
            tok = self.take()
            if tok[0] == "num":
                exp = int(tok[1])
            elif tok[1] == "(":
                inner = self.sum()
                self.expect(")")
                if not inner.is_scalar():
                    raise ParseError("exponent must be an integer", tok[2], self.text)
                val = qq(inner.scalar_value())
                if val.denominator != 1:
                    raise ParseError("exponent must be an integer", tok[2], self.text)
                exp = int(val)
            else:
                raise ParseError("exponent must be an integer", tok[2], self.text)
            exp *= sign
            if exp < 0 and not base.is_monomial():
                raise ParseError("negative exponent on a non-monomial", tok[2], self.text)
            return base ** exp
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Expr.scalar(qq(int(val)))
        if kind == "name":
            if val == "p":
                return Expr.scalar(symbolic_p())
            if _VAR.match(val):
                return Expr.var(val)
            raise ParseError(f"unknown variable {val!r}", pos, self.text)
        if val == "(":
            e = self.sum()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end", pos, self.text)


def parse_expr(text):
    if not isinstance(text, str):
        raise ParseError("expected a string")
    return _Parser(text).parse()


def _coeff(c, p_value):
    if isinstance(c, Frac):
        if c.is_rational():
            return qq(c)
        if p_value is not None:
            return qq(c.num(p_value) / c.den(p_value))
    return c


def _univariate(expr, var, p_value=None):
    extra = expr.variables() - {var}
    if extra:
        raise ParseError(f"unexpected variable(s) {sorted(extra)} in a polynomial in {var}")
    out = {}
    for key, c in expr.terms.items():
        e = dict(key).get(var, 0)
        out[e] = _coeff(c, p_value)
    return out


def parse_poly(text, var="u", p_value=None):
    """Parse a polynomial in one variable.  ``p_value`` substitutes a rational
    for the symbol p."""
    terms = _univariate(parse_expr(text), var, p_value)
    if any(e < 0 for e in terms):
        raise ParseError(f"negative power of {var} in a polynomial")
    return Poly(terms, var)


def parse_laurent(text, var="u", p_value=None):
    terms = _univariate(parse_expr(text), var, p_value)
    return LaurentPoly.from_dict(terms, var)


class _FractionParser(_Parser):
    """Same grammar evaluated in the fraction field Q(p)(var)."""

    def __init__(self, text, var):
        super().__init__(text)
        self.var = var

    def product(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            pos = self.peek()[2]
            rhs = self.unary()
            if op == "*":
                e = e * rhs
            else:
                if rhs == 0:
                    raise ParseError("division by zero", pos, self.text)
                e = e / rhs
        return e

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] in ("-", "+"):
                sign = -1 if self.take()[1] == "-" else 1
            tok = self.take()
            if tok[0] != "num":
                raise ParseError("exponent must be an integer", tok[2], self.text)
            exp = sign * int(tok[1])
            if exp < 0 and base == 0:
                raise ParseError("division by zero", tok[2], self.text)
            return base ** exp
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Frac(Poly((int(val),), self.var))
        if kind == "name":
            if val == "p":
                return Frac(Poly((symbolic_p(),), self.var))
            if val == self.var:
                return Frac(Poly.gen(self.var))
            raise ParseError(f"unknown variable {val!r}", pos, self.text)
        if val == "(":
            e = self.sum()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end", pos, self.text)


def parse_fraction(text, var="u", p_value=None):
    """Parse a rational function of one variable into a reduced Frac."""
    if not isinstance(text, str):
        raise ParseError("expected a string")
    value = _FractionParser(text, var).parse()
    if p_value is not None:
        value = Frac(
            Poly([_coeff(c, p_value) for c in value.num.c], var),
            Poly([_coeff(c, p_value) for c in value.den.c], var),
        )
    return value
