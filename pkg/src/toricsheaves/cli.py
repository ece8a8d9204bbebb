"""Command line front end: ``toricsheaves <command> [flags]``.

Exit status is 0 on success, 2 for invalid input and 3 when a
computation fails an internal consistency check.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .assembly import QSeriesError, QSeriesProvider, assemble_torsionfree, load_qseries
from .chern import IntegralityError, chern
from .enumeration import fixed_locus_census, grefl_p3, hartshorne_audit, normalize_c1
from .laurent import Window, macmahon
from .stability import RayWeights, classify_p3, is_mu_stable
from .toricdata import CollisionPattern, ParityError, Space, ToricDatum
from .wallcross import WallError, chamber_scan, grefl_p2p1

THREADS_ENV = "TORICSHEAVES_THREADS"
EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3


class UsageError(ValueError):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    vals = _ints(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected two integers like 1,1, got {text!r}")
    return vals


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def _space(text: str) -> Space:
    try:
        return Space.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pattern(text: str) -> CollisionPattern:
    """``0,1/2/3`` means blocks {0,1}, {2}, {3}."""
    try:
        return CollisionPattern(tuple(_ints(b) for b in text.split("/") if b))
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad pattern {text!r}: {exc}") from None


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricsheaves",
        description="Torus-localization counts of stable rank 2 reflexive sheaves on P3 and P2xP1.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--threads", type=int, default=_default_threads(), help=f"worker processes (default ${THREADS_ENV} or 1)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("grefl", parents=[common], help="reflexive generating function")
    p.add_argument("--space", type=_space, default=Space.P3)
    p.add_argument("--c1", required=True, help="integer on p3, pair f,f' on p2p1")
    p.add_argument("--c2", required=True, help="integer on p3, pair aL,aL' on p2p1")
    p.add_argument("--tau", type=_fraction, help="polarization ratio (p2p1 only)")
    p.add_argument("--vmax", type=int, default=10, help="search bound on v_i (p2p1 only)")

    p = sub.add_parser("census", parents=[common], help="fixed-locus components on P3")
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--c3", type=int, required=True)

    p = sub.add_parser("chern", parents=[common], help="Chern classes of toric data")
    p.add_argument("--space", type=_space, default=Space.P3)
    p.add_argument("--u", type=_ints, help="defaults to all zeros")
    p.add_argument("--v", type=_ints, required=True)
    p.add_argument("--pattern", type=_pattern, help="blocks like 0,1/2/3; default all distinct")

    p = sub.add_parser("classify", parents=[common], help="stability verdict of toric data")
    p.add_argument("--space", type=_space, default=Space.P3)
    p.add_argument("--v", type=_ints, required=True)
    p.add_argument("--pattern", type=_pattern, help="blocks like 0,1/2/3; default all distinct")
    p.add_argument("--tau", type=_fraction, default=Fraction(1), help="polarization ratio (p2p1 only)")

    p = sub.add_parser("walls", parents=[common], help="chamber structure on P2xP1")
    p.add_argument("--c1", type=_pair, required=True)
    p.add_argument("--c2", type=_pair, required=True)
    p.add_argument("--vmax", type=int, default=10)

    p = sub.add_parser("audit", parents=[common], help="Hartshorne bounds audit on P3")
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--c2max", type=int, required=True)

    p = sub.add_parser("assemble", parents=[common], help="torsion free series from Quot data")
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--qseries", help="Q-series JSON file; omit for Q = 1")
    p.add_argument("--pmin", type=int, default=0)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--qmin", type=int, required=True)
    p.add_argument("--qmax", type=int, required=True)

    p = sub.add_parser("macmahon", parents=[common], help="MacMahon series up to q^n")
    p.add_argument("--n", type=int, required=True)
    return parser


def _notice(msg: str) -> None:
    print(msg, file=sys.stderr)


def _normalized_c1(c1: int, c2: int = 0, c3=None):
    l, c1n, c2n, c3n = normalize_c1(c1, c2, c3)
    if l:
        _notice(f"notice: twisted by O({l}): c1={c1} -> {c1n}, c2={c2} -> {c2n}")
    return c1n, c2n, c3n


def _datum(space: Space, u, v, pattern) -> ToricDatum:
    n = space.ray_count
    if len(v) != n:
        raise UsageError(f"{space.value} needs {n} entries in --v")
    if u is None:
        u = (0,) * n
    if pattern is None:
        pattern = CollisionPattern.singletons(i for i, x in enumerate(v) if x > 0)
    return ToricDatum(space, u, v, pattern)


def _dispatch(args) -> tuple[str, object]:
    """Returns (text, json-able) for the command."""
    cmd = args.command
    if getattr(args, "threads", 1) < 1:
        raise UsageError("--threads must be at least 1")

    if cmd == "grefl":
        if args.space is Space.P3:
            try:
                c1, c2 = int(args.c1), int(args.c2)
            except ValueError:
                raise UsageError("on p3, --c1 and --c2 are integers") from None
            c1, c2, _ = _normalized_c1(c1, c2)
            poly = grefl_p3(c1, c2, workers=args.threads)
        else:
            c1, c2 = _pair(args.c1), _pair(args.c2)
            if args.tau is None or args.tau <= 0:
                raise UsageError("p2p1 needs a positive --tau")
            if args.vmax < 0:
                raise UsageError("--vmax must be nonnegative")
            poly = grefl_p2p1(c1, c2, args.tau, args.vmax, workers=args.threads)
        return str(poly), poly.to_json()

    if cmd == "census":
        c1, c2, c3 = _normalized_c1(args.c1, args.c2, args.c3)
        entries = fixed_locus_census(c1, c2, c3, workers=args.threads)
        lines = [f"{e.type} v={e.v} multiplicity={e.multiplicity} euler={e.euler}" for e in entries]
        total = sum(e.multiplicity * e.euler for e in entries)
        lines.append(f"total Euler characteristic: {total}")
        return "\n".join(lines), {"entries": [e.to_json() for e in entries], "total": total}

    if cmd == "chern":
        d = _datum(args.space, args.u, args.v, args.pattern)
        ch = chern(d)
        return f"c1={ch.c1} c2={ch.c2} c3={ch.c3}", {"datum": d.to_json(), "chern": ch.to_json()}

    if cmd == "classify":
        d = _datum(args.space, None, args.v, args.pattern)
        if args.space is Space.P3:
            wts = RayWeights.unit()
        else:
            if args.tau <= 0:
                raise UsageError("--tau must be positive")
            wts = RayWeights.p2p1(args.tau)
        verdict = is_mu_stable(d, wts)
        out = {"status": verdict.status.value, "witness": None if verdict.witness is None else list(verdict.witness)}
        text = verdict.status.value
        if args.space is Space.P3:
            out["type"] = classify_p3(d).value
            text += f" ({out['type']})"
        return text, out

    if cmd == "walls":
        if args.vmax < 0:
            raise UsageError("--vmax must be nonnegative")
        report = chamber_scan(args.c1, args.c2, args.vmax, workers=args.threads)
        return str(report), report.to_json()

    if cmd == "audit":
        if args.c2max < 1:
            raise UsageError("--c2max must be at least 1")
        c1, _, _ = _normalized_c1(args.c1)
        report = hartshorne_audit(c1, args.c2max, workers=args.threads)
        return str(report), report.to_json()

    if cmd == "assemble":
        c1, _, _ = _normalized_c1(args.c1)
        provider = load_qseries(args.qseries) if args.qseries else QSeriesProvider.unit()
        window = Window(args.pmin, args.pmax, args.qmin, args.qmax)
        series = assemble_torsionfree(c1, provider, window, workers=args.threads)
        return str(series), series.to_json()

    if cmd == "macmahon":
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        poly = macmahon(args.n)
        return str(poly), poly.to_json()

    raise UsageError(f"unknown command {cmd}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, data = _dispatch(args)
    except (IntegralityError, WallError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, ParityError, QSeriesError, ValueError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(data))
    else:
        print(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
