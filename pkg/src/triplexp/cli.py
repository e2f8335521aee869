"""Command-line entry point.

Exit codes: 0 success, 1 a mathematical check failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections import Counter
from dataclasses import asdict
from pathlib import Path

from . import kernels
from .energy import energy_fast, energy_naive
from .expsum import (IntervalSpec, SumInstance, WeightSequence, triple_sum_direct,
                     triple_sum_factored)
from .grid import ConfigError, GridConfig
from .modular import PrimeContext, factorize, is_prime
from .verify import FIELDS, regime_compare, run_checks, scan, theorem_bound, trivial_bound

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2
CROSSCHECK_TERMS = 10**6

log = logging.getLogger("triplexp")


class InputError(Exception):
    pass


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _context(p, g) -> PrimeContext:
    if p < 3 or not is_prime(p):
        raise InputError(f"p={p} is not an odd prime")
    if g % p == 0:
        raise InputError("g not a unit")
    return PrimeContext.create(p, g)


def _factor_string(n):
    if n == 1:
        return "1"
    counts = Counter(factorize(n))
    return "*".join(f"{q}^{e}" if e > 1 else str(q) for q, e in sorted(counts.items()))


def cmd_order(args, out):
    ctx = _context(args.p, args.g)
    print(f"T={ctx.T}", file=out)
    print(f"p-1={_factor_string(ctx.p - 1)}", file=out)
    return EXIT_OK


def cmd_energy(args, out):
    ctx = _context(args.p, args.g)
    if not 1 <= args.K <= ctx.T:
        raise InputError(f"need 1 <= K <= T, got K={args.K}, T={ctx.T}")
    if args.method == "naive":
        print(f"E={energy_naive(ctx, args.K)}", file=out)
        return EXIT_OK
    if args.method == "fast":
        print(f"E={energy_fast(ctx, args.K)}", file=out)
        return EXIT_OK
    naive, fast = energy_naive(ctx, args.K), energy_fast(ctx, args.K)
    print(f"E={naive} E={fast}", file=out)
    return EXIT_OK if naive == fast else EXIT_CHECK


def _weights(spec, length):
    if spec == "unit":
        return WeightSequence.unit(length)
    if spec.startswith("random:"):
        return WeightSequence.random(length, int(spec.split(":", 1)[1]))
    if spec.startswith("file:"):
        return WeightSequence.from_file(spec.split(":", 1)[1])
    raise InputError(f"bad weights spec {spec!r}; use unit, random:SEED or file:PATH")


def cmd_sum(args, out):
    ctx = _context(args.p, args.g)
    if args.a % ctx.p == 0:
        raise InputError("a not a unit")
    full = args.M is None
    M = ctx.p if full else args.M
    iv = IntervalSpec(M, args.N, args.H, args.L, -1 if full else args.K_off)
    try:
        iv.check(ctx)
        weights = _weights(args.weights, M)
        inst = SumInstance(ctx, args.a, iv, weights, full_residue_range=full)
    except (ValueError, OSError) as exc:
        raise InputError(str(exc)) from exc

    S = triple_sum_factored(inst)
    norm1, norm2 = inst.norms()
    thm = theorem_bound(ctx.p, ctx.T, iv.N, norm1, norm2)
    triv = trivial_bound(ctx.p, iv.H, iv.N, norm1)
    pred1, pred2 = regime_compare(ctx.p, ctx.T, M, iv.N, iv.H)
    rows = [("T", ctx.T), ("S_re", S.real), ("S_im", S.imag), ("S_abs", abs(S)),
            ("norm1", norm1), ("norm2", norm2),
            ("thm_bound", thm), ("thm_ratio", abs(S) / thm if thm else 0.0),
            ("triv_bound", triv), ("triv_ratio", abs(S) / triv if triv else 0.0),
            ("pred1", pred1), ("pred2", pred2)]
    status = EXIT_OK
    if M * iv.N * iv.H <= CROSSCHECK_TERMS:
        D = triple_sum_direct(inst)
        dev = abs(D - S)
        rows.append(("direct_deviation", dev))
        if dev > 1e-9 * max(1.0, abs(S)):
            print(f"cross-check mismatch: direct={D!r} factored={S!r}", file=sys.stderr)
            status = EXIT_CHECK
    for key, value in rows:
        print(f"{key}={fmt(value)}", file=out)
    return status


def cmd_verify(args, out):
    grid = _load_grid(args.config)
    ok = True
    for result in run_checks(grid):
        ok &= result.ok
        print(result.line(), file=out)
    print("ALL PASS" if ok else "SOME CHECKS FAILED", file=out)
    return EXIT_OK if ok else EXIT_CHECK


def render_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in records:
        d = asdict(r)
        w.writerow([fmt(d[f]) for f in FIELDS])
    return buf.getvalue()


def render_json(records) -> str:
    return json.dumps([asdict(r) for r in records], indent=1) + "\n"


def cmd_scan(args, out):
    grid = _load_grid(args.config)
    fmt_name = args.format or grid.output_format
    path = args.output or grid.output_path
    jobs = args.jobs or grid.jobs
    records = scan(grid, jobs=jobs)
    text = render_csv(records) if fmt_name == "csv" else render_json(records)
    if path in (None, "-"):
        out.write(text)
    else:
        Path(path).write_text(text)
        log.info("wrote %d records to %s", len(records), path)
    return EXIT_OK


def _load_grid(path):
    try:
        return GridConfig.load(path)
    except ConfigError as exc:
        raise InputError(str(exc)) from exc


def build_parser():
    ap = argparse.ArgumentParser(prog="triplexp", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="multiplicative order of g mod p")
    p.add_argument("p", type=int)
    p.add_argument("g", type=int)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("energy", help="additive energy E_p(K) of g, g^2, ..., g^K")
    p.add_argument("p", type=int)
    p.add_argument("g", type=int)
    p.add_argument("K", type=int)
    p.add_argument("--method", choices=("naive", "fast", "both"), default="fast")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("sum", help="evaluate one triple exponential sum")
    for name in ("p", "g", "a"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--M", type=int, default=None,
                   help="length of I; omit for I = Z_p")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--L", type=int, default=0)
    p.add_argument("--K-off", dest="K_off", type=int, default=0)
    p.add_argument("--weights", default="unit", help="unit | random:SEED | file:PATH")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("verify", help="run the checks named in a JSON grid config")
    p.add_argument("config")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="write scan records for a JSON grid config")
    p.add_argument("config")
    p.add_argument("-o", "--output", default=None, help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("-j", "--jobs", type=int, default=None)
    p.set_defaults(func=cmd_scan)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    log.debug("kernel backend: %s", kernels.BACKEND)
    try:
        return args.func(args, out)
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
