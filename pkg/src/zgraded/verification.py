"""Executable certificates for the graded rings B(G, H, J).

Every check works on principal generators g_n of the pieces and returns a
:class:`Report`.  Claims about all n are verified on finite windows; checks
that only establish a windowed necessary condition say so in their verdict.
"""

import json

from .cycles import (
    Cycle,
    alternating_endpoints,
    cycle_abs,
    cycle_min,
    iterate,
    pos_part,
    shift,
)
from .exact import LaurentPoly, poly_gcd
from .graded import GradedPieces, GradedRingSpec, psi_pieces
from .sigma import CERTIFIED, OrbitPoint, apply_sigma, multiplicity, orbit_incidence

__all__ = [
    "PASS",
    "FAIL",
    "WINDOWED_PASS",
    "Report",
    "SupportSequence",
    "check_comaximality",
    "check_simplicity_criterion",
    "check_quasi_fg",
    "check_closure",
    "check_stable_range",
    "check_generation",
    "support_cycle_sequence",
    "check_trichotomy",
    "recover_cycle_data",
    "check_psi_duality",
    "check_cycle_lemmas",
]

PASS = "PASS"
FAIL = "FAIL"
WINDOWED_PASS = "WINDOWED-PASS"


class Report:
    """Verdict of one check, with the window used and a witness."""

    def __init__(self, check, verdict, window=None, witness=None):
        if verdict not in (PASS, FAIL, WINDOWED_PASS):
            raise ValueError(f"unknown verdict {verdict!r}")
        if verdict == FAIL and not witness:
            raise ValueError("a failing report needs a witness")
        self.check = check
        self.verdict = verdict
        self.window = list(window) if window is not None else None
        self.witness = witness or {}

    @property
    def ok(self):
        return self.verdict != FAIL

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {
            "check": self.check,
            "verdict": self.verdict,
            "window": self.window,
            "witness": _jsonable(self.witness),
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        return f"Report({self.check}: {self.verdict}, window={self.window}, witness={self.witness})"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Cycle):
        return obj.to_json()
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


def _pieces(source):
    if isinstance(source, GradedPieces):
        return source
    if isinstance(source, GradedRingSpec):
        return GradedPieces.from_spec(source)
    raise TypeError("expected a GradedRingSpec or GradedPieces")


def _core(f):
    return f.core if isinstance(f, LaurentPoly) else f


def _range(n_range):
    if isinstance(n_range, tuple) and len(n_range) == 2:
        lo, hi = n_range
        return list(range(lo, hi + 1))
    return list(n_range)


def _pair_products(pieces, n):
    ring = pieces.ring
    gp, gm = pieces(n), pieces(-n)
    a = gp * apply_sigma(ring, gm, n)
    b = gm * apply_sigma(ring, gp, -n)
    return a, b


def check_comaximality(source, n_range):
    """B_n B_-n + B_-n B_n = R in degree 0: gcd(g_n s^n(g_-n), g_-n s^-n(g_n)) = 1."""
    pieces = _pieces(source)
    ns = _range(n_range)
    window = (min(ns), max(ns)) if ns else None
    for n in ns:
        a, b = _pair_products(pieces, n)
        g = poly_gcd(a, b)
        g = pieces.ring.normalize(g)
        if g.degree > 0:
            return Report("comaximality", FAIL, window, {"n": n, "common_factor": str(g)})
    return Report("comaximality", PASS, window)


def check_simplicity_criterion(source, n, window):
    """Sum over i in [n, n + window] of I_i s^i(I_-i) + I_-i s^-i(I_i) is R.

    A necessary condition for simplicity, certified on the window only.
    """
    pieces = _pieces(source)
    acc = None
    for i in range(n, n + window + 1):
        a, b = _pair_products(pieces, i)
        acc = poly_gcd(a, b) if acc is None else poly_gcd(acc, poly_gcd(a, b))
        acc = pieces.ring.normalize(acc)
        if acc.degree == 0:
            return Report(
                "simplicity-criterion", WINDOWED_PASS, (n, n + window), {"unit_reached_at": i}
            )
    return Report(
        "simplicity-criterion", FAIL, (n, n + window), {"n": n, "common_factor": str(acc)}
    )


def check_quasi_fg(source, r, window):
    """B_n = sum_{i=1..r} B_i B_{n-i} for r < n <= window (positive degrees)."""
    if window <= r:
        raise ValueError("window must exceed r")
    pieces = _pieces(source)
    ring = pieces.ring
    for n in range(r + 1, window + 1):
        acc = None
        for i in range(1, r + 1):
            cand = pieces(i) * apply_sigma(ring, pieces(n - i), i)
            acc = cand if acc is None else poly_gcd(acc, cand)
        acc = ring.normalize(acc)
        if acc != pieces(n):
            return Report(
                "quasi-fg",
                FAIL,
                (r + 1, window),
                {"n": n, "generated": str(acc), "piece": str(pieces(n))},
            )
    return Report("quasi-fg", PASS, (r + 1, window))


def check_closure(source, window):
    """g_{m+n} divides g_m s^m(g_n) for |m|, |n| <= window (B is a ring)."""
    pieces = _pieces(source)
    ring = pieces.ring
    for m in range(-window, window + 1):
        gm = pieces(m)
        for n in range(-window, window + 1):
            prod = gm * apply_sigma(ring, pieces(n), m)
            if not pieces(m + n).divides(prod):
                return Report(
                    "closure",
                    FAIL,
                    (-window, window),
                    {"m": m, "n": n, "product": str(prod), "piece": str(pieces(m + n))},
                )
    return Report("closure", PASS, (-window, window))


def check_stable_range(source, N, width):
    """g_m s^m(g_n) = g_{m+n} for m, n in [N, N + width] and in [-N - width, -N]."""
    pieces = _pieces(source)
    ring = pieces.ring
    for sign in (1, -1):
        ns = [sign * k for k in range(N, N + width + 1)]
        for m in ns:
            for n in ns:
                prod = ring.normalize(pieces(m) * apply_sigma(ring, pieces(n), m))
                if prod != pieces(m + n):
                    return Report(
                        "stable-range",
                        FAIL,
                        (N, N + width),
                        {"m": m, "n": n, "product": str(prod), "piece": str(pieces(m + n))},
                    )
    return Report("stable-range", PASS, (N, N + width))


def check_generation(source, N, window):
    """Every piece of degree |n| <= window lies in the subring generated by the
    pieces of degree |i| <= max(2N - 1, 1).

    Degree by degree, products g_i s^i(S_{n-i}) of a generator with an
    already generated piece are accumulated until the generated ideal
    reaches g_n.  Only words climbing monotonically from degree 0 are used,
    so a PASS is a genuine certificate.
    """
    pieces = _pieces(source)
    ring = pieces.ring
    m = max(2 * N - 1, 1)
    generated = {n: pieces(n) for n in range(-m, m + 1)}
    for sign in (1, -1):
        for k in range(m + 1, window + 1):
            n = sign * k
            target = pieces(n)
            acc = None
            for i in range(1, m + 1):
                step = sign * i
                cand = pieces(step) * apply_sigma(ring, generated[n - step], step)
                acc = cand if acc is None else poly_gcd(acc, cand)
                acc = ring.normalize(acc)
                if acc == target:
                    break
            if not target.divides(acc):
                raise AssertionError(f"generated ideal escapes the ring in degree {n}")
            generated[n] = acc
            if acc != target:
                return Report(
                    "generation",
                    FAIL,
                    (-window, window),
                    {"n": n, "generated": str(acc), "piece": str(target), "m": m},
                )
    return Report("generation", PASS, (-window, window), {"m": m})


class SupportSequence:
    """n -> (F_n, E_n): multiplicities of the pieces along the orbit of q and
    their truncation at 1."""

    def __init__(self, q, entries):
        self.q = q
        self.entries = dict(entries)

    def F(self, n):
        return self.entries[n][0]

    def E(self, n):
        return self.entries[n][1]

    def window(self):
        return min(self.entries), max(self.entries)

    def to_json(self):
        return {
            "orbit": str(self.q),
            "F": {str(n): f.to_json() for n, (f, _) in sorted(self.entries.items())},
            "E": {str(n): e.to_json() for n, (_, e) in sorted(self.entries.items())},
        }


def _truncate(F):
    return Cycle({i: min(1, a) for i, a in F.items()})


def support_cycle_sequence(source, q, W):
    """F_n = sum_i multiplicity(g_n, q, i) Z_i for |n| <= W."""
    pieces = _pieces(source)
    ring = pieces.ring
    point = q if isinstance(q, OrbitPoint) else OrbitPoint(q, ring)
    entries = {}
    for n in range(-W, W + 1):
        g = pieces(n)
        hits, status = orbit_incidence(ring, g, point)
        if status != CERTIFIED:
            raise ValueError(
                f"orbit incidence of degree {n} is only windowed; "
                "use rational parameters or monomial-root data"
            )
        F = Cycle({i: multiplicity(ring, g, point, i) for i in hits})
        entries[n] = (F, _truncate(F))
    return SupportSequence(point.q, entries)


def check_trichotomy(seq, G):
    """Which of E_n = |G_n|, max(G_n, 0), max(-G_n, 0) holds on the window."""
    cases = (
        ("I", cycle_abs),
        ("II", pos_part),
        ("III", lambda c: pos_part(-c)),
    )
    lo, hi = seq.window()
    mismatch = {}
    for label, fn in cases:
        bad = None
        for n in range(lo, hi + 1):
            if seq.E(n) != fn(iterate(G, n)):
                bad = n
                break
        if bad is None:
            return Report("trichotomy", PASS, (lo, hi), {"case": label})
        mismatch[label] = {"n": bad, "E_n": seq.E(bad), "expected": fn(iterate(G, bad))}
    return Report("trichotomy", FAIL, (lo, hi), mismatch)


def recover_cycle_data(E, min_tail=None):
    """Recover (G, Omega) from a sequence E_n = G_n - Omega.

    ``E`` maps consecutive integers n to cycles.  From E_{n+1} - E_n =
    sigma^-n(G) the candidate G is shift(E_{n+1} - E_n, n); the scan looks for
    the first n from which this candidate and Omega = G_n - E_n stay constant.
    By default the whole window must follow one (G, Omega); ``min_tail``
    allows an unstable prefix as long as at least that many entries remain.
    """
    ns = sorted(E)
    if len(ns) < 2 or ns != list(range(ns[0], ns[-1] + 1)):
        raise ValueError("need at least two consecutive degrees")
    if min_tail is None:
        min_tail = len(ns)
    min_tail = max(min_tail, 2)
    cands = [shift(E[n + 1] - E[n], n) for n in ns[:-1]]
    found = None
    for start in range(len(cands)):
        G = cands[start]
        if any(c != G for c in cands[start:]):
            continue
        omegas = {iterate(G, n) - E[n] for n in ns[start:]}
        if len(omegas) == 1:
            found = start
            break
    if found is None or len(ns) - found < min_tail:
        raise ValueError("sequence not stabilized")
    (omega,) = omegas
    if not omega.is_effective():
        raise ValueError(f"recovered Omega = {omega!r} is not effective")
    return G, omega


def check_psi_duality(spec, W):
    """Support sequence of psi(B) at q in degree n equals sigma^-n shifted
    degree -n entry of B's sequence (I'_n = sigma^n(I_-n))."""
    pieces = GradedPieces.from_spec(spec)
    dual = psi_pieces(pieces)
    seq = support_cycle_sequence(pieces, spec.q, W)
    dseq = support_cycle_sequence(dual, spec.q, W)
    for n in range(-W, W + 1):
        expected = shift(seq.F(-n), -n)
        if dseq.F(n) != expected:
            return Report("psi-duality", FAIL, (-W, W), {"n": n, "F": dseq.F(n), "expected": expected})
    return Report("psi-duality", PASS, (-W, W))


def _pack(cycles):
    """Encode each cycle as sum a_i 2^(bits (i - base)).

    The digits are balanced (|a_i| < 2^(bits-1)), so equal cycles and equal
    integers coincide and sigma^-m becomes a shift by bits*m.
    """
    top = max((abs(a) for C in cycles.values() for a in C.c), default=0)
    bits = (2 * top + 1).bit_length() + 1
    base = min((C.lo for C in cycles.values() if C.c), default=0)
    out = {}
    for n, C in cycles.items():
        acc = 0
        for i, a in C.items():
            acc += a << (bits * (i - base))
        out[n] = acc
    return out, bits


def check_cycle_lemmas(G, window):
    """Cocycle identity for |m|, |n| <= window; for pleasantly alternating G
    also the coefficient bounds and min(G_n, sigma^n(G_n)) = 0 for
    N <= n <= N + window."""
    its = {n: iterate(G, n) for n in range(-2 * window, 2 * window + 1)}
    packed, bits = _pack(its)
    lift = bits * window
    for m in range(-window, window + 1):
        left = packed[m] << lift
        step = bits * (m + window)
        for n in range(-window, window + 1):
            # G_m + sigma^-m(G_n) = G_{m+n}, everything lifted by 2^(bits W)
            if left + (packed[n] << step) != packed[m + n] << lift:
                return Report("cycle-lemmas", FAIL, (-window, window), {"cocycle": [m, n]})
    if alternating_endpoints(G) is None:
        return Report("cycle-lemmas", PASS, (-window, window), {"alternating": False})
    N = G.span()
    for n, Gn in its.items():
        allowed = {-1, 0, 1}
        if n >= N:
            allowed = {0, 1}
        elif n <= -N:
            allowed = {-1, 0}
        bad = [a for _, a in Gn.items() if a not in allowed]
        if bad:
            return Report("cycle-lemmas", FAIL, (-window, window), {"bounds": n, "G_n": Gn})
    for n in range(N, N + window + 1):
        Gn = iterate(G, n)
        if cycle_min(Gn, shift(Gn, n)):
            return Report("cycle-lemmas", FAIL, (-window, window), {"min_zero": n, "G_n": Gn})
    return Report("cycle-lemmas", PASS, (-window, window), {"alternating": True, "N": N})
