"""Command-line front end.

Exit codes: 0 ok, 2 usage error, 3 parse error, 4 bound violation
(a reproducer is printed).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bounds import BoundDomainError, bounds_table
from .census import (CensusConfig, CensusError, CensusViolation,
                     probe_conjecture1, run_census, summary_csv)
from .gf import FieldError, make_field
from .pairs import FIXTURES, fixture, order, pair_report
from .parsing import ParseError, parse_algebraic_set, parse_quadric
from .projective import format_point
from .quadric import classify
from .varieties import (AlgebraicSet, Form, check_conjecture2, count_points,
                        estimate_dim_degree)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VIOLATION = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(obj: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
        return
    for key, value in obj.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        out.write(f"{key}: {value}\n")


def _field(args):
    return make_field(args.p, args.m)


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {' '.join(missing)}")


def cmd_count(args, out) -> int:
    F = _field(args)
    if args.forms:
        X = parse_algebraic_set(args.forms, args.n, F)
    else:
        _need(args, "q1")
        X = AlgebraicSet((Form.from_quadratic(parse_quadric(args.q1, args.n, F)),))
    _emit({"n": args.n, "q": F.q, "k": args.k, "count": count_points(X, args.k)}, args.format, out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    _need(args, "q1")
    F = _field(args)
    f = parse_quadric(args.q1, args.n, F)
    prof = classify(f)
    res = {"form": str(f), **prof.to_json(F)}
    res["vertex_points"] = [format_point(v, F) for v in prof.vertex_basis]
    _emit(res, args.format, out)
    return EXIT_OK


def cmd_order(args, out) -> int:
    _need(args, "q1", "q2")
    F = _field(args)
    f1, f2 = parse_quadric(args.q1, args.n, F), parse_quadric(args.q2, args.n, F)
    _emit({"order": order(f1, f2)}, args.format, out)
    return EXIT_OK


def _report_pair(f1, f2, args, out, extra: Optional[dict] = None) -> int:
    rep = pair_report(f1, f2)
    body = {"q1": str(f1), "q2": str(f2), **(extra or {}), **rep.to_json()}
    _emit(body, args.format, out)
    if rep.in_hypothesis and rep.slack < 0:
        sys.stderr.write("bound exceeded by an in-hypothesis pair; this is a bug\n")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_pair(args, out) -> int:
    _need(args, "q1", "q2")
    F = _field(args)
    return _report_pair(parse_quadric(args.q1, args.n, F), parse_quadric(args.q2, args.n, F), args, out)


def cmd_extremal(args, out) -> int:
    _need(args, "name")
    F = _field(args)
    f1, f2 = fixture(args.name, args.n, F)
    return _report_pair(f1, f2, args, out, {"name": args.name})


def cmd_bounds(args, out) -> int:
    F = _field(args)
    table = bounds_table(args.n, F.q, d=args.d, s=args.s, r=args.r)
    if args.format == "json":
        out.write(json.dumps(table.to_json(), indent=2) + "\n")
    else:
        out.write(table.to_text() + "\n")
    return EXIT_OK


def cmd_census(args, out) -> int:
    F = _field(args)
    q1 = [parse_quadric(args.q1, args.n, F)] if args.q1 else None
    cfg = CensusConfig(
        n=args.n, field=F, q1=q1,
        ranks=args.ranks, types=args.types,
        mode=args.mode, samples=args.samples, seed=args.seed, chunk=args.chunk,
        out=Path(args.out) if args.out else None,
        records=args.records, workers=args.workers,
        resume=not args.no_resume,
    )
    try:
        summary = run_census(cfg)
    except CensusViolation as exc:
        out.write(json.dumps({"violation": exc.reproducer}, indent=2) + "\n")
        return EXIT_VIOLATION
    if args.format == "csv":
        out.write(summary_csv(summary))
    else:
        _emit(summary, args.format, out)
    return EXIT_OK


def cmd_conjecture(args, out) -> int:
    F = _field(args)
    if args.which == 1:
        _need(args, "r")
        rep = probe_conjecture1(args.n, F, args.r, args.samples, args.seed, args.workers)
        if rep.counterexamples:
            sys.stderr.write(f"POSSIBLE COUNTEREXAMPLE: {len(rep.counterexamples)} pair(s) above {rep.bound}\n")
        _emit(rep.to_json(), args.format, out)
        return EXIT_OK
    if not args.forms:
        raise UsageError("conjecture --which 2 needs --forms")
    X = parse_algebraic_set(args.forms, args.n, F)
    d = args.d if args.d is not None else X.declared_deg
    s = args.s if args.s is not None else X.declared_dim
    body = {}
    if d is None or s is None:
        est = estimate_dim_degree(X, args.kmax)
        body["estimate"] = {"s": est.s, "d": est.d, "counts": list(est.counts),
                            "ratios": [round(r, 6) for r in est.ratios], "heuristic": True}
        d = d if d is not None else est.d
        s = s if s is not None else est.s
        if d is None or s is None:
            raise UsageError("X has no points over the probed extensions; declare --d and --s")
    rep = check_conjecture2(X, d, s)
    if rep.counterexample:
        sys.stderr.write(f"POSSIBLE COUNTEREXAMPLE: |X| = {rep.count} exceeds d q^s + pi_(s-1)\n")
    body.update(rep.to_json())
    _emit(body, args.format, out)
    return EXIT_OK


COMMANDS = {
    "count": cmd_count, "classify": cmd_classify, "order": cmd_order, "pair": cmd_pair,
    "bounds": cmd_bounds, "census": cmd_census, "conjecture": cmd_conjecture,
    "extremal": cmd_extremal,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadfq", description="Quadrics and their intersections over F_q.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="projective dimension")
    common.add_argument("--p", type=int, required=True, help="characteristic")
    common.add_argument("--m", type=int, default=1, help="extension degree (q = p^m)")
    common.add_argument("--format", choices=("json", "text", "csv"), default="text")

    p = sub.add_parser("count", parents=[common], help="count points of a quadric or algebraic set")
    p.add_argument("--q1")
    p.add_argument("--forms", nargs="+")
    p.add_argument("--k", type=int, default=1, help="count over F_{q^k}")

    p = sub.add_parser("classify", parents=[common], help="rank, vertex, type and point count")
    p.add_argument("--q1")

    for name in ("order", "pair"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--q1")
        p.add_argument("--q2")

    p = sub.add_parser("bounds", parents=[common], help="table of closed-form bounds")
    p.add_argument("--d", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--r", type=int)

    p = sub.add_parser("census", parents=[common], help="sweep pairs of quadrics")
    p.add_argument("--q1", help="explicit Q1 instead of all canonical classes")
    p.add_argument("--ranks", type=int, nargs="+")
    p.add_argument("--types", nargs="+", choices=("hyperbolic", "elliptic", "parabolic"))
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chunk", type=int, default=4096)
    p.add_argument("--out", help="JSON-lines record stream (resumable)")
    p.add_argument("--records", choices=("all", "extremal", "none"), default="all")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-resume", action="store_true")

    p = sub.add_parser("conjecture", parents=[common], help="probe the two conjectured bounds")
    p.add_argument("--which", type=int, choices=(1, 2), default=2)
    p.add_argument("--r", type=int, help="rank of the degenerate Q1 (which=1)")
    p.add_argument("--samples", type=int, help="random Q2 count; exhaustive if omitted (which=1)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--forms", nargs="+", help="forms of X, plus optional deg=/dim= (which=2)")
    p.add_argument("--d", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--kmax", type=int, default=2, help="extension degree for the (s, d) estimate")

    p = sub.add_parser("extremal", parents=[common], help="run a named extremal configuration")
    p.add_argument("--name", choices=sorted(FIXTURES))
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except (UsageError, FieldError, BoundDomainError, CensusError, KeyError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
