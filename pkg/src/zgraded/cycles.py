"""Formal cycles sum a_i Z_i on one orbit and their calculus.

A cycle is stored densely as an offset plus a tuple of coefficients with
nonzero ends, which makes ``shift`` a constant-time reindexing.
"""

import json
import re

__all__ = [
    "Cycle",
    "Z",
    "shift",
    "iterate",
    "cycle_max",
    "cycle_min",
    "max_min_pos",
    "pos_part",
    "cycle_abs",
    "is_pleasantly_alternating",
    "alternating_endpoints",
    "classify_sequence",
    "Pinned",
    "AlternatingMultiple",
    "HypothesisViolated",
    "random_pleasantly_alternating",
    "parse_cycle",
]


class HypothesisViolated(ValueError):
    """Raised when a sequence of iterates is not effective where required."""


class Cycle:
    """Finite integer combination of the symbols Z_i."""

    __slots__ = ("lo", "c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        if isinstance(coeffs, Cycle):
            self.lo, self.c = coeffs.lo, coeffs.c
            self._hash = None
            return
        if not isinstance(coeffs, dict):
            coeffs = dict(_pairs(coeffs))
        items = {int(i): int(a) for i, a in coeffs.items() if a}
        if not items:
            self.lo, self.c = 0, ()
        else:
            lo, hi = min(items), max(items)
            self.lo = lo
            self.c = tuple(items.get(i, 0) for i in range(lo, hi + 1))
        self._hash = None

    @classmethod
    def _dense(cls, lo, coeffs):
        coeffs = list(coeffs)
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        obj = cls.__new__(cls)
        obj._hash = None
        if start == end:
            obj.lo, obj.c = 0, ()
        else:
            obj.lo, obj.c = lo + start, tuple(coeffs[start:end])
        return obj

    @classmethod
    def from_list(cls, lo, coeffs):
        """Cycle whose coefficient at ``lo + k`` is ``coeffs[k]``."""
        return cls._dense(lo, coeffs)

    # -- mapping interface ---------------------------------------------------
    @property
    def hi(self):
        return self.lo + len(self.c) - 1

    def __getitem__(self, i):
        k = i - self.lo
        if 0 <= k < len(self.c):
            return self.c[k]
        return 0

    def items(self):
        return [(self.lo + k, a) for k, a in enumerate(self.c) if a]

    def support(self):
        return [self.lo + k for k, a in enumerate(self.c) if a]

    def as_dict(self):
        return dict(self.items())

    def __iter__(self):
        return iter(self.support())

    def __len__(self):
        return sum(1 for a in self.c if a)

    def __bool__(self):
        return bool(self.c)

    def is_zero(self):
        return not self.c

    def is_effective(self):
        return all(a >= 0 for a in self.c)

    def degree(self):
        """Coefficient sum."""
        return sum(self.c)

    def span(self):
        """Distance between the extreme indices of the support (0 if empty)."""
        return len(self.c) - 1 if self.c else 0

    def dense(self, lo, hi):
        """Coefficients at indices lo..hi as a list."""
        return [self[i] for i in range(lo, hi + 1)]

    # -- arithmetic ------------------------------------------------------------
    def _combine(self, other, sign):
        if not other.c:
            return self
        if not self.c:
            return other if sign > 0 else -other
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        k = self.lo - lo
        for i, a in enumerate(self.c):
            out[k + i] = a
        k = other.lo - lo
        if sign > 0:
            for i, a in enumerate(other.c):
                out[k + i] += a
        else:
            for i, a in enumerate(other.c):
                out[k + i] -= a
        return Cycle._dense(lo, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Cycle._dense(self.lo, [-a for a in self.c])

    def __mul__(self, k):
        return Cycle._dense(self.lo, [k * a for a in self.c])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Cycle):
            return self.lo == other.lo and self.c == other.c
        if other == 0:
            return not self.c
        return NotImplemented

    def __le__(self, other):
        """Componentwise comparison."""
        return (other - self).is_effective()

    def __ge__(self, other):
        return (self - other).is_effective()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.lo, self.c)) if self.c else 0
        return self._hash

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for i, a in self.items():
            mag = abs(a)
            term = f"Z{i}" if mag == 1 else f"{mag}*Z{i}"
            if not parts:
                parts.append(("-" if a < 0 else "") + term)
            else:
                parts.append((" - " if a < 0 else " + ") + term)
        return "".join(parts)

    def to_json(self):
        return [[i, a] for i, a in self.items()]

    def dumps(self):
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        out = {}
        for pair in data:
            if len(pair) != 2:
                raise ValueError(f"bad cycle entry {pair!r}")
            i, a = pair
            if isinstance(i, bool) or isinstance(a, bool):
                raise ValueError("cycle entries must be integers")
            if int(i) != i or int(a) != a:
                raise ValueError("cycle entries must be integers")
            out[int(i)] = out.get(int(i), 0) + int(a)
        return cls(out)


def _pairs(data):
    for pair in data:
        i, a = pair
        yield i, a


def Z(i=0, a=1):
    """The cycle a*Z_i."""
    return Cycle._dense(i, [a])


def shift(G, j):
    """sigma^j(G): the coefficient of Z_i in the result is that of Z_{i+j} in G."""
    if not G.c or j == 0:
        return G
    obj = Cycle.__new__(Cycle)
    obj._hash = None
    obj.lo = G.lo - j
    obj.c = G.c
    return obj


def iterate(G, n):
    """G_n: G + sigma^-1(G) + ... + sigma^(1-n)(G) for n >= 1, G_0 = 0 and
    -(sigma(G) + ... + sigma^|n|(G)) for n <= -1."""
    if n == 0 or not G.c:
        return Cycle()
    width = len(G.c)
    count = abs(n)
    out = [0] * (width + count - 1)
    if n > 0:
        # sigma^-k(G) starts at G.lo + k
        for k in range(count):
            for t, a in enumerate(G.c):
                out[k + t] += a
        return Cycle._dense(G.lo, out)
    # sigma^k(G) starts at G.lo - k, k = 1..count
    base = G.lo - count
    for k in range(1, count + 1):
        off = count - k
        for t, a in enumerate(G.c):
            out[off + t] -= a
    return Cycle._dense(base, out)


def _pointwise(a, b, fn):
    if not a.c and not b.c:
        return Cycle()
    idx = [i for i in (a.lo, a.hi, b.lo, b.hi)]
    if not a.c:
        idx = [b.lo, b.hi]
    elif not b.c:
        idx = [a.lo, a.hi]
    lo, hi = min(idx), max(idx)
    return Cycle._dense(lo, [fn(a[i], b[i]) for i in range(lo, hi + 1)])


def cycle_max(a, b):
    return _pointwise(a, b, max)


def cycle_min(a, b):
    return _pointwise(a, b, min)


def max_min_pos(a, b):
    """Componentwise (max, min) of two cycles."""
    return cycle_max(a, b), cycle_min(a, b)


def pos_part(a):
    """D^+ = max(D, 0)."""
    return Cycle._dense(a.lo, [x if x > 0 else 0 for x in a.c])


def cycle_abs(a):
    return Cycle._dense(a.lo, [abs(x) for x in a.c])


def alternating_endpoints(G):
    """(r, s) when G is pleasantly alternating, else None."""
    if not G.c:
        return None
    expect = 1
    for a in G.c:
        if a == 0:
            continue
        if a != expect:
            return None
        expect = -expect
    # the last nonzero coefficient must be +1, so we stopped expecting -1
    if expect != -1:
        return None
    return G.lo, G.hi


def is_pleasantly_alternating(G):
    return alternating_endpoints(G) is not None


class Pinned:
    """Some Z_i lies below min(G_n, sigma^n(G_n)) for every large n."""

    kind = "PINNED"

    def __init__(self, index):
        self.index = index

    def __eq__(self, other):
        return isinstance(other, Pinned) and other.index == self.index

    def __repr__(self):
        return f"PINNED({self.index})"


class AlternatingMultiple:
    """G = d * base with base pleasantly alternating."""

    kind = "ALTERNATING_MULTIPLE"

    def __init__(self, d, base):
        self.d = d
        self.base = base

    def __eq__(self, other):
        return (
            isinstance(other, AlternatingMultiple)
            and other.d == self.d
            and other.base == self.base
        )

    def __repr__(self):
        return f"ALTERNATING_MULTIPLE({self.d}, {self.base!r})"


def stable_iterate(G, n):
    """Closed form of G_n for n >= span(G), from the partial sums of G.

    With r the lowest index, N = span, d_i = g_r + ... + g_{r+i} and
    e_i = d - d_i this is
    d_0 Z_r + ... + d_{N-1} Z_{r+N-1} + d (Z_{r+N} + ... + Z_{r+n-1})
    + e_0 Z_{r+n} + ... + e_{N-1} Z_{r+n+N-1}.
    """
    if not G.c:
        return Cycle()
    N = G.span()
    if n < N or n < 1:
        raise ValueError("closed form needs n >= span")
    partial = []
    acc = 0
    for a in G.c[:N]:
        acc += a
        partial.append(acc)
    d = sum(G.c)
    out = partial + [d] * (n - N) + [d - x for x in partial]
    return Cycle._dense(G.lo, out)


def classify_sequence(G, window=16):
    """Decide which alternative of the converse lemma holds for G.

    Requires G_n effective for N <= n <= N + window (N = span of G).
    Returns ``Pinned(i)`` when an index i with Z_i <= min(G_n, sigma^n G_n)
    exists for all n >= N, otherwise ``AlternatingMultiple(d, base)``.  Both
    answers are re-checked over the window.
    """
    if not G.c:
        raise ValueError("zero cycle")
    N = G.span()
    start = max(N, 1)
    for n in range(start, start + window + 1):
        if not iterate(G, n).is_effective():
            raise HypothesisViolated(f"hypothesis violated: G_{n} is not effective")
    r = G.lo
    d = sum(G.c)
    acc = 0
    pinned = None
    for k in range(N):
        acc += G.c[k]
        if acc > 0 and d - acc > 0:
            pinned = r + k
            break
    if pinned is not None:
        unit = Z(pinned)
        for n in range(start, start + window + 1):
            Gn = iterate(G, n)
            if not unit <= cycle_min(Gn, shift(Gn, n)):
                raise AssertionError(f"pinned index {pinned} fails at n={n}")
        return Pinned(pinned)
    if d <= 0:
        raise HypothesisViolated("hypothesis violated: nonpositive degree")
    if any(a % d for a in G.c):
        raise AssertionError("coefficients are not a multiple of the degree")
    base = Cycle._dense(G.lo, [a // d for a in G.c])
    if not is_pleasantly_alternating(base):
        raise AssertionError(f"{base!r} is not pleasantly alternating")
    for n in range(start, start + window + 1):
        Gn = iterate(G, n)
        if cycle_min(Gn, shift(Gn, n)):
            raise AssertionError(f"min(G_n, sigma^n G_n) nonzero at n={n}")
    return AlternatingMultiple(d, base)


def random_pleasantly_alternating(rng, max_span=8, lo_range=(-3, 3)):
    """A random pleasantly alternating cycle: an odd number of strictly
    increasing indices carrying +1, -1, ..., +1."""
    r = rng.randint(*lo_range)
    span = rng.randint(0, max_span)
    if span < 2:
        return Z(r)
    # an odd number of interior indices keeps both endpoints at +1
    count = 2 * rng.randint(0, (span - 2) // 2) + 1
    inner = sorted(rng.sample(range(r + 1, r + span), count))
    idx = [r] + inner + [r + span]
    return Cycle({i: (1 if k % 2 == 0 else -1) for k, i in enumerate(idx)})


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*Z\s*(-?\d+)\s*")


def parse_cycle(text):
    """Cycle from JSON pairs ``[[i, a], ...]`` or a sum like ``Z0 - Z1 + Z2``."""
    text = text.strip()
    if text.startswith("["):
        return Cycle.from_json(text)
    if text in ("", "0"):
        return Cycle()
    out = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise ValueError(f"cannot read cycle {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        i = int(m.group(3))
        out[i] = out.get(i, 0) + sign * coeff
        pos = m.end()
    return Cycle(out)
