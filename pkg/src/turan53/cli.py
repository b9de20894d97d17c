"""Command-line front end.

Exit codes: 0 all claims hold, 1 a claim is violated, 2 usage or parse
error, 3 internal error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Optional, Sequence

from .constructions import ConstructionError, ConstructionTrace, build, is_supported
from .graph import GraphFormatError, format_edgelist, parse_edgelist
from .triples import (
    bounds_report,
    format_triples,
    from_graph,
    goodman_M,
    has_43_config,
    pg23_system,
)
from .verifier import Certificate, certify, goodman_exhaustive_check, is_turan_system

log = logging.getLogger("turan53")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
CHECKS = ("c5", "regularity", "goodman", "turan")


class UsageError(Exception):
    pass


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        write_atomic(Path(out), text)


def _describe(cert: Certificate) -> str:
    reg = cert.regularity
    if reg["kind"] == "regular":
        cls = f"regular({reg['d']})"
    elif reg["kind"] == "almost_regular":
        cls = f"almost_regular({reg['d']}, special_degree={reg['special_degree']})"
    else:
        cls = "irregular(" + ", ".join(f"{k}:{v}" for k, v in reg["histogram"].items()) + ")"
    return (
        f"n={cert.n} class={cls} triples={cert.total} M={cert.goodman_M} "
        f"delta={cert.delta:+d} vs M({cert.n})"
    )


def _build(n: int):
    try:
        return build(n)
    except ConstructionError as exc:
        raise UsageError(str(exc)) from exc


def cmd_construct(args: argparse.Namespace) -> int:
    g, trace = _build(args.n)
    cert = certify(g, trace)
    fmt = args.format
    if fmt == "edgelist":
        emit(format_edgelist(g), args.out)
    elif fmt == "trace":
        emit(trace.to_json() + "\n", args.out)
    elif fmt == "triples":
        emit(format_triples(from_graph(g)), args.out)
    else:
        emit(cert.to_json(timing=not args.no_timing), args.out)
    if args.trace_out:
        write_atomic(Path(args.trace_out), trace.to_json() + "\n")
    print(_describe(cert), file=sys.stderr)
    return EXIT_OK


def _parse_checks(spec: str) -> list[str]:
    checks = [c.strip() for c in spec.split(",") if c.strip()]
    bad = [c for c in checks if c not in CHECKS]
    if bad or not checks:
        raise UsageError(f"unknown checks {bad}; choose from {','.join(CHECKS)}")
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    checks = _parse_checks(args.checks)
    try:
        g = parse_edgelist(Path(args.input).read_text())
    except (OSError, GraphFormatError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    trace = None
    if args.trace:
        try:
            trace = ConstructionTrace.from_json(Path(args.trace).read_text())
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read trace {args.trace}: {exc}") from exc
    cert = certify(g, trace)
    emit(cert.to_json(timing=not args.no_timing), args.out)
    claims = cert.claims()
    failed = [c for c in checks if not claims[c]]
    for c in checks:
        print(f"{c}: {'PASS' if claims[c] else 'FAIL'}", file=sys.stderr)
    if cert.induced_c5 is not None and "c5" in checks:
        print(f"induced C5 witness: {cert.induced_c5}", file=sys.stderr)
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    try:
        report = bounds_report(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    emit(report.render(), args.out)
    return EXIT_OK


def cmd_system(args: argparse.Namespace) -> int:
    g, _ = _build(args.n)
    s = from_graph(g)
    emit(format_triples(s), args.out)
    print(f"n={s.n} triples={len(s)} M={goodman_M(s.n)}", file=sys.stderr)
    return EXIT_OK


def cmd_pg13(args: argparse.Namespace) -> int:
    s = pg23_system()
    emit(format_triples(s), args.out)
    witness = has_43_config(s)
    uncovered = is_turan_system(s, 5)
    print(
        f"triples={len(s)} turan_valid={uncovered is None} "
        f"43_configuration={'none' if witness is None else list(witness)}",
        file=sys.stderr,
    )
    return EXIT_OK if witness is None and uncovered is None else EXIT_VIOLATION


def cmd_goodman_check(args: argparse.Namespace) -> int:
    try:
        res = goodman_exhaustive_check(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lines = [
        f"n: {res.n}",
        f"graphs: {res.graphs}",
        f"minimum: {res.minimum}",
        f"goodman_M: {goodman_M(res.n)}",
        f"minimizers: {res.minimizers}",
        f"profiles_match: {res.profiles_ok}",
        f"profile_implies_minimum: {res.converse_ok}",
    ]
    for prof, count in sorted(res.profiles.items()):
        lines.append(f"profile {' '.join(map(str, prof))}: {count}")
    emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if res.ok else EXIT_VIOLATION


def sweep_one(n: int) -> Certificate:
    g, trace = build(n)
    return certify(g, trace)


def sweep_ok(cert: Certificate) -> bool:
    expected_delta = 1 if cert.n == 27 else 0
    ok = cert.induced_c5 is None and cert.turan_valid and cert.delta == expected_delta
    if cert.n != 27:
        ok = ok and cert.regularity_matches_extremal
    return ok


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.n_min > args.n_max:
        raise UsageError("--n-min must not exceed --n-max")
    out_dir = Path(args.out_dir)
    targets, skipped = [], []
    for n in range(args.n_min, args.n_max + 1):
        if n % 2:
            (targets if is_supported(n) else skipped).append(n)
    mapper: Callable = map
    pool = None
    if args.jobs > 1:
        pool = ProcessPoolExecutor(max_workers=args.jobs)
        mapper = pool.map
    try:
        certs = list(mapper(sweep_one, targets))
    finally:
        if pool is not None:
            pool.shutdown()
    rows = ["n\tclass\ttriples\tM\tdelta\tstatus"]
    all_ok = True
    for cert in certs:
        write_atomic(out_dir / f"certificate_{cert.n:03d}.json", cert.to_json(timing=not args.no_timing))
        ok = sweep_ok(cert)
        all_ok &= ok
        rows.append(
            f"{cert.n}\t{cert.regularity['kind']}\t{cert.total}\t{cert.goodman_M}\t"
            f"{cert.delta:+d}\t{'ok' if ok else 'FAIL'}"
        )
    for n in skipped:
        rows.append(f"{n}\t-\t-\t{goodman_M(n)}\t-\tskipped")
    summary = "\n".join(rows) + "\n"
    write_atomic(out_dir / "summary.tsv", summary)
    sys.stdout.write(summary)
    return EXIT_OK if all_ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="turan53", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build the graph for odd n")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out", help="output path (default stdout)")
    c.add_argument(
        "--format", choices=("edgelist", "triples", "certificate", "trace"), default="edgelist"
    )
    c.add_argument("--trace-out", help="also write the construction trace here")
    c.add_argument("--no-timing", action="store_true", help="omit timing from certificates")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="certify a graph given as an edge list")
    v.add_argument("input")
    v.add_argument("--checks", default=",".join(CHECKS))
    v.add_argument("--trace", help="construction trace to embed in the certificate")
    v.add_argument("--out", help="certificate path (default stdout)")
    v.add_argument("--no-timing", action="store_true")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="print the bounds on T(n,5,3)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("system", help="write the Turán system of build(n)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_system)

    g = sub.add_parser("pg13", help="write the PG(2,3) collinear-triple system")
    g.add_argument("--out")
    g.set_defaults(func=cmd_pg13)

    e = sub.add_parser("goodman-check", help="exhaustive minimum over graphs with n <= 7")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_goodman_check)

    w = sub.add_parser("sweep", help="construct and certify every supported odd n in a range")
    w.add_argument("--n-min", type=int, required=True)
    w.add_argument("--n-max", type=int, required=True)
    w.add_argument("--out-dir", required=True)
    w.add_argument("--jobs", type=int, default=1)
    w.add_argument("--no-timing", action="store_true")
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
