"""Command line front end: build rings, run checks, emit JSON reports.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on
usage or parse errors.
"""

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import __version__
from .cycles import Cycle, classify_sequence, parse_cycle, random_pleasantly_alternating
from .exact import Poly, qq
from .graded import GradedPieces, GradedRingSpec, OrbitConditionError, SkewElement, gwa_embed
from .lonely import is_lonely, is_lonely_points, is_lonely_poly, validate_witness
from .morita import check_morita, cycle_from_S
from .parsing import ParseError, parse_laurent, parse_poly
from .sigma import ADDITIVE, MULTIPLICATIVE, OrbitPoint, SigmaLine, TorusDescriptor
from .verification import (
    FAIL,
    PASS,
    Report,
    check_closure,
    check_comaximality,
    check_cycle_lemmas,
    check_generation,
    check_psi_duality,
    check_quasi_fg,
    check_simplicity_criterion,
    check_stable_range,
    check_trichotomy,
    support_cycle_sequence,
)

SCHEMA_VERSION = 1
CHECKS = (
    "closure",
    "comaximality",
    "simplicity",
    "quasi-fg",
    "stable-range",
    "generation",
    "trichotomy",
    "psi-duality",
    "morita",
    "cycle-lemmas",
)


class UsageError(ValueError):
    pass


def default_window():
    raw = os.environ.get("GWA_WINDOW_DEFAULT")
    if raw is None:
        return 12
    try:
        w = int(raw)
    except ValueError:
        raise UsageError(f"GWA_WINDOW_DEFAULT must be an integer, got {raw!r}")
    if w < 1:
        raise UsageError("GWA_WINDOW_DEFAULT must be positive")
    return w


# -- reading inputs ----------------------------------------------------------


def ring_from_args(kind, p=None):
    kind = (kind or "A").upper()
    if kind in ("A", ADDITIVE):
        if p is not None:
            raise UsageError("the additive ring takes no --p")
        return SigmaLine(ADDITIVE)
    if kind in ("B", MULTIPLICATIVE):
        if p is None:
            raise UsageError("the multiplicative ring needs --p")
        return SigmaLine(MULTIPLICATIVE, str(p))
    raise UsageError(f"unknown ring {kind!r} (use A or B)")


def ring_from_json(data):
    if not isinstance(data, dict):
        raise UsageError("ring must be an object")
    return ring_from_args(data.get("kind", "A"), data.get("p"))


def read_poly(ring, text):
    if not isinstance(text, str):
        text = str(text)
    p_value = None if ring.kind == ADDITIVE or ring.symbolic else ring.p
    if ring.kind == ADDITIVE:
        return parse_poly(text, "u", p_value)
    return ring.normalize(parse_laurent(text, "u", p_value))


def read_cycle(data):
    if isinstance(data, list):
        return Cycle.from_json(data)
    try:
        return parse_cycle(str(data))
    except ValueError as exc:
        raise UsageError(str(exc))


def default_orbit(ring, h, j):
    rad = (h * j).squarefree_part()
    if rad.degree > 0:
        return rad
    return parse_poly("u") if ring.kind == ADDITIVE else parse_poly("u - 1")


def spec_from_json(ring, data):
    if not isinstance(data, dict) or "G" not in data:
        raise UsageError("each spec needs at least a cycle G")
    G = read_cycle(data["G"])
    h = read_poly(ring, data.get("h", "1"))
    j = read_poly(ring, data.get("j", "1"))
    q = read_poly(ring, data["orbit"]) if "orbit" in data else default_orbit(ring, h, j)
    return GradedRingSpec(ring, q, G, h, j)


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg}", exc.pos)
    except OSError as exc:
        raise UsageError(str(exc))


def check_version(data):
    v = data.get("version", SCHEMA_VERSION)
    if v != SCHEMA_VERSION:
        raise UsageError(f"unsupported schema version {v!r}")


# -- checks ------------------------------------------------------------------


def run_check(name, spec, window):
    N = spec.N
    if name == "closure":
        return check_closure(spec, window)
    if name == "comaximality":
        return check_comaximality(spec, (N, N + window))
    if name == "simplicity":
        return check_simplicity_criterion(spec, N, window)
    if name == "quasi-fg":
        r = max(2 * N - 1, 1)
        return check_quasi_fg(spec, r, max(window, r + 1))
    if name == "stable-range":
        return check_stable_range(spec, N, window)
    if name == "generation":
        return check_generation(spec, N, window)
    if name == "trichotomy":
        seq = support_cycle_sequence(spec, spec.q, window)
        return check_trichotomy(seq, spec.G)
    if name == "psi-duality":
        return check_psi_duality(spec, window)
    if name == "morita":
        return check_morita(spec, window)
    if name == "cycle-lemmas":
        return check_cycle_lemmas(spec.G, window)
    raise UsageError(f"unknown check {name!r}; known: {', '.join(CHECKS)}")


def round_trip(spec, stored):
    """Stored piece strings must equal freshly computed canonical strings."""
    pieces = GradedPieces.from_spec(spec)
    ring = spec.ring
    for key, text in stored.items():
        n = int(key)
        fresh = str(pieces(n))
        reread = str(ring.normalize(read_poly(ring, text)))
        if fresh != text or reread != text:
            return Report("round-trip", FAIL, None, {"n": n, "stored": text, "computed": fresh})
    degrees = sorted(int(k) for k in stored)
    window = (degrees[0], degrees[-1]) if degrees else None
    return Report("round-trip", PASS, window)


def spec_record(spec, window):
    out = spec.to_json()
    out["window"] = [-window, window]
    out["pieces"] = GradedPieces.from_spec(spec).dump(-window, window)
    return out


# -- subcommands -------------------------------------------------------------


def cmd_build(args):
    window = args.window or default_window()
    if args.config:
        data = load_json(args.config)
        check_version(data)
        ring = ring_from_json(data.get("ring", {}))
        specs = [spec_from_json(ring, s) for s in data.get("specs", [])]
    else:
        if args.G is None:
            raise UsageError("build needs --config or --G")
        ring = ring_from_args(args.ring, args.p)
        entry = {"G": args.G, "h": args.h, "j": args.j}
        if args.orbit:
            entry["orbit"] = args.orbit
        specs = [spec_from_json(ring, entry)]
    out = {
        "version": SCHEMA_VERSION,
        "ring": ring.to_json(),
        "specs": [spec_record(s, window) for s in specs],
    }
    return out, 0


def _bundle(reports, **extra):
    ok = all(r.ok for r in reports)
    out = {"version": SCHEMA_VERSION, "verdict": PASS if ok else FAIL}
    out.update(extra)
    out["reports"] = [r.to_json() for r in reports]
    return out, (0 if ok else 1)


def _checks_arg(text):
    names = [c.strip() for c in text.split(",") if c.strip()]
    for c in names:
        if c not in CHECKS:
            raise UsageError(f"unknown check {c!r}; known: {', '.join(CHECKS)}")
    return names


def cmd_verify(args):
    data = load_json(args.spec)
    check_version(data)
    ring = ring_from_json(data.get("ring", {}))
    window = args.window or default_window()
    names = _checks_arg(args.checks) if args.checks else []
    reports = []
    for entry in data.get("specs", []):
        spec = spec_from_json(ring, entry)
        if "pieces" in entry:
            reports.append(round_trip(spec, entry["pieces"]))
        for name in names:
            reports.append(run_check(name, spec, window))
    if not reports:
        raise UsageError("nothing to verify")
    return _bundle(reports)


def _parse_points(text):
    try:
        return [qq(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read points {text!r}")


def cmd_lonely(args):
    if args.dim and args.dim > 1:
        params = [x.strip() for x in (args.params or "").split(",") if x.strip()]
        names = args.names.split(",") if args.names else None
        torus = TorusDescriptor(args.dim, params, args.additive, names)
        verdict = is_lonely(torus, args.f)
        from .lonely import MultiPoly, torus_names
        from .parsing import parse_expr

        f = MultiPoly.from_expr(parse_expr(args.f), torus_names(torus))
        valid = validate_witness(torus, f.normalized(skip_first=torus.additive), verdict)
        out = {"version": SCHEMA_VERSION, "torus": repr(torus), "f": args.f}
        out.update(verdict.to_json())
        out["witness_validated"] = bool(valid)
        return out, (0 if verdict.lonely else 1)
    ring = ring_from_args(args.ring, args.p)
    if args.points:
        points = [OrbitPoint(Poly((-a, 1)), ring) for a in _parse_points(args.points)]
        verdict = is_lonely_points(ring, points)
        subject = {"points": args.points}
    else:
        if args.f is None:
            raise UsageError("lonely needs --f or --points")
        verdict = is_lonely_poly(ring, read_poly(ring, args.f))
        subject = {"f": args.f}
    out = {"version": SCHEMA_VERSION, "ring": ring.to_json(), **subject}
    out.update(verdict.to_json())
    return out, (0 if verdict.lonely else 1)


def cmd_morita(args):
    ring = ring_from_args(args.ring, args.p)
    window = args.window or default_window()
    if args.G is not None:
        G = read_cycle(args.G)
    else:
        S = [int(x) for x in (args.S or "").replace(" ", "").split(",") if x]
        G = cycle_from_S(S)
    entry = {"G": G.to_json(), "h": args.h, "j": args.j}
    if args.orbit:
        entry["orbit"] = args.orbit
    spec = spec_from_json(ring, entry)
    return _bundle([check_morita(spec, window)], spec=spec.to_json())


def cmd_gwa(args):
    ring = ring_from_args(args.ring, args.p)
    window = args.window or default_window()
    f = read_poly(ring, args.f)
    try:
        x, y, spec = gwa_embed(ring, f)
    except OrbitConditionError as exc:
        witness = {"first": str(exc.first), "second": str(exc.second), "shift": exc.shift}
        report = Report("gwa", FAIL, None, witness)
        return _bundle([report], f=args.f)
    # x y = sigma(f) and y x = f; the powers of y realize the negative pieces
    relations = x * y == SkewElement(ring, {0: ring.sigma(f, 1)}) and y * x == SkewElement(
        ring, {0: f}
    )
    pieces = GradedPieces.from_spec(spec)
    power = y
    bad = None
    for n in range(1, window + 1):
        coeff = power.coeff(-n)
        if ring.normalize(coeff) != pieces(-n):
            bad = n
            break
        power = power * y
    if not relations:
        report = Report("gwa", FAIL, (1, window), {"relation": "x y != sigma(f) or y x != f"})
    elif bad is not None:
        report = Report("gwa", FAIL, (1, window), {"n": bad, "piece": str(pieces(-bad))})
    else:
        report = Report("gwa", PASS, (1, window))
    # same layout as build output, so the file can be fed to verify
    return _bundle(
        [report], f=args.f, ring=ring.to_json(), specs=[spec_record(spec, window)]
    )


def cmd_cycles(args):
    window = args.window or default_window()
    if args.G is not None:
        cycles = [read_cycle(args.G)]
        seed = None
    else:
        if args.seed is None:
            raise UsageError("random cycles need an explicit --seed")
        seed = args.seed
        rng = random.Random(seed)
        cycles = [random_pleasantly_alternating(rng, args.max_span) for _ in range(args.count)]
    reports = []
    for G in cycles:
        report = check_cycle_lemmas(G, window)
        report.witness["G"] = G.to_json()
        if args.classify:
            verdict = classify_sequence(G, window)
            report.witness["classification"] = repr(verdict)
        reports.append(report)
    return _bundle(reports, seed=seed)


def cmd_run(args):
    data = load_json(args.config)
    check_version(data)
    ring = ring_from_json(data.get("ring", {}))
    seed = data.get("seed")
    specs = [spec_from_json(ring, s) for s in data.get("specs", [])]
    checks = data.get("checks", [])
    reports = []
    for k, spec in enumerate(specs):
        for item in checks:
            if isinstance(item, str):
                item = {"name": item}
            name = item.get("name")
            window = int(item.get("window") or default_window())
            if window < spec.N:
                raise UsageError(f"window {window} is smaller than the span of {spec.G}")
            report = run_check(name, spec, window)
            report.witness.setdefault("spec", k)
            reports.append(report)
    for text in data.get("lonely", []):
        verdict = is_lonely_poly(ring, read_poly(ring, text))
        verdict_report = Report(
            "lonely",
            PASS if verdict.lonely else FAIL,
            None,
            {"f": text, **({"witness": verdict.witness} if verdict.witness else {})},
        )
        reports.append(verdict_report)
    output = args.out or data.get("output")
    if output:
        target = Path(output)
        target.mkdir(parents=True, exist_ok=True)
        for k, report in enumerate(reports):
            path = target / f"{k:03d}-{report.check}.json"
            path.write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
    return _bundle(reports, seed=seed)


# -- entry point -------------------------------------------------------------


def _ring_options(p):
    p.add_argument("--ring", default="A", help="A (u -> u+1) or B (u -> p u)")
    p.add_argument("--p", default=None, help="multiplier for ring B, or 'symbolic'")


def build_parser():
    parser = argparse.ArgumentParser(prog="zgraded", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--out", help="write the JSON result here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="piece generators of B(G, H, J)")
    _ring_options(p)
    p.add_argument("--config")
    p.add_argument("--orbit")
    p.add_argument("--G")
    p.add_argument("--h", default="1")
    p.add_argument("--j", default="1")
    p.add_argument("--window", type=int)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run checks on specs from a JSON file")
    p.add_argument("--spec", required=True)
    p.add_argument("--checks", default="")
    p.add_argument("--window", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lonely", help="decide sigma-loneliness")
    _ring_options(p)
    p.add_argument("--f")
    p.add_argument("--points", help="comma separated rational points")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--params", help="comma separated multipliers p_i")
    p.add_argument("--additive", action="store_true", help="x1 is an additive coordinate")
    p.add_argument("--names", help="comma separated coordinate names")
    p.set_defaults(func=cmd_lonely)

    p = sub.add_parser("morita", help="End(L) against B(G, H, J)")
    _ring_options(p)
    p.add_argument("--S", help="comma separated offsets")
    p.add_argument("--G")
    p.add_argument("--orbit")
    p.add_argument("--h", default="u")
    p.add_argument("--j", default="1")
    p.add_argument("--window", type=int)
    p.set_defaults(func=cmd_morita)

    p = sub.add_parser("gwa", help="generalized Weyl algebra T(sigma, f)")
    p.add_argument("action", nargs="?", default="build", choices=["build"])
    _ring_options(p)
    p.add_argument("--f", required=True)
    p.add_argument("--window", type=int)
    p.set_defaults(func=cmd_gwa)

    p = sub.add_parser("cycles", help="cycle lemma suite")
    p.add_argument("--G")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-span", type=int, default=8)
    p.add_argument("--classify", action="store_true")
    p.add_argument("--window", type=int)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("run", help="execute a scenario config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", dest="out", help="directory for per-check reports")
    p.set_defaults(func=cmd_run)
    return parser


def _emit(obj, path=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, code = args.func(args)
    except ParseError as exc:
        _emit({"version": SCHEMA_VERSION, "error": str(exc), "position": exc.pos})
        return 2
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        _emit({"version": SCHEMA_VERSION, "error": str(exc)})
        return 2
    out = args.out if args.command != "run" else None
    _emit(result, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
