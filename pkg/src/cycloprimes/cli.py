"""Command-line entry point: ``cycloprimes <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage, 3 internal invariant
violation, 4 I/O or store error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

import gmpy2

from . import ntheory
from .checks import SUITES, run_suite
from .cyclotomic import cyclotomic_record
from .errors import DomainError, InvariantViolation, StoreError
from .heuristics import constant_c, density_sum
from .ntheory import multiplicative_order
from .primality import PipelineConfig, classify
from .survey import APPENDIX_LISTS, ResultStore, count_rows, emit_table, iter_survey, load_appendix, validate_appendix
from .witnesses import CensusConfig, composite_census, enumerate_sophie_germain, order_map, sophie_germain_composite

STORE_ENV = "CYCLOPRIMES_STORE"
FULL_DIGITS = 80

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INVARIANT, EXIT_IO = 0, 1, 2, 3, 4


def digit_count(n: int) -> int:
    return len(gmpy2.mpz(n).digits(10))


def render_int(n: int, full: bool = False):
    """Exact value up to 80 digits (or with full=True), else a digit count."""
    if full or digit_count(n) <= FULL_DIGITS:
        return gmpy2.mpz(n).digits(10)
    return "<%d digits>" % digit_count(n)


def value_summary(m: int, full: bool = False) -> dict:
    rec = cyclotomic_record(m)
    out = {
        "m": m,
        "phi": render_int(rec.phi, full),
        "phi_digits": digit_count(rec.phi),
        "phi_bits": rec.phi.bit_length(),
        "delta": rec.delta,
        "psi": render_int(rec.psi, full),
        "psi_digits": digit_count(rec.psi),
    }
    if rec.split is not None:
        s = rec.split
        out["split"] = {name: render_int(getattr(s, name), full)
                        for name in ("phi_plus", "phi_minus", "psi_plus", "psi_minus")}
    return out


def _emit(obj, fmt, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, default=str) + "\n")
        return
    if isinstance(obj, list):
        for item in obj:
            _emit(item, fmt, out)
        return
    for key, val in obj.items():
        if isinstance(val, dict):
            out.write("%s:\n" % key)
            for k2, v2 in val.items():
                out.write("  %s: %s\n" % (k2, v2))
        else:
            out.write("%s: %s\n" % (key, val))


def _parse_target(text: str):
    """Decimal integer, or phi:M / psi:M / psi+:M / psi-:M. Returns (n, m_context)."""
    if ":" not in text:
        return int(text), None
    kind, m = text.split(":", 1)
    m = int(m)
    rec = cyclotomic_record(m)
    if kind == "phi":
        return rec.phi, m
    if kind == "psi":
        return rec.psi, m
    if kind in ("psi+", "psi-"):
        if rec.split is None:
            raise DomainError("m = %d is not 4 mod 8" % m)
        return (rec.split.psi_plus if kind == "psi+" else rec.split.psi_minus), m
    raise DomainError("unknown target kind %r" % kind)


def _config(args) -> PipelineConfig:
    return PipelineConfig(trial_bound=args.trial_bound)


def cmd_value(args):
    if args.m < 1:
        raise DomainError("m must be >= 1")
    _emit(value_summary(args.m, args.full), args.format)
    return EXIT_OK


def cmd_classify(args):
    n, m = _parse_target(args.n)
    if args.m is not None:
        m = args.m
    c = classify(n, m, _config(args))
    _emit({"n": render_int(n, args.full), "m": m, "tag": c.tag.value, "method": c.method,
           "witness": None if c.witness is None else str(c.witness)}, args.format)
    return EXIT_OK


def cmd_split(args):
    rec = cyclotomic_record(args.m)
    if rec.split is None:
        raise DomainError("m = %d is not 4 mod 8" % args.m)
    _emit(value_summary(args.m, args.full), args.format)
    return EXIT_OK


def cmd_order(args):
    if args.x is not None:
        buckets = order_map(args.x)
        _emit({str(m): " ".join(map(str, b.witnesses)) for m, b in buckets.items()}, args.format)
    else:
        _emit({"p": args.p, "order": multiplicative_order(args.p)}, args.format)
    return EXIT_OK


def _store(path):
    path = path or os.environ.get(STORE_ENV)
    return ResultStore(path) if path else None


def cmd_survey(args):
    store = _store(args.resume)
    records = []
    try:
        for rec in iter_survey(args.kmax, _config(args), store, args.jobs):
            records.append(rec)
    except KeyboardInterrupt:
        sys.stderr.write("interrupted after m = %d; rerun with the same store to resume\n"
                         % (records[-1].m if records else 0))
        return 130
    sys.stdout.write(emit_table(count_rows(records, args.kmax), args.format))
    return EXIT_OK


def cmd_validate(args):
    k = max(1, (args.bound - 1).bit_length())
    records = [r for r in iter_survey(k, _config(args), _store(args.resume), args.jobs) if r.m <= args.bound]
    names = [args.list] if args.list else APPENDIX_LISTS
    report = validate_appendix(args.bound, records, load_appendix(), names)
    _emit(report.as_dict(), args.format)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_sophie(args):
    if args.p is not None:
        certs = [sophie_germain_composite(args.p)]
    else:
        certs = enumerate_sophie_germain(args.limit)
    rows = [{"p": c.p, "q": c.q, "p_mod4": c.p_mod4, "q_mod8": c.q_mod8, "jacobi2q": c.jacobi2q,
             "divides": c.divides, "proper": c.proper} for c in certs]
    if args.format == "json":
        _emit(rows, "json")
    else:
        for r in rows:
            sys.stdout.write("p=%(p)d q=%(q)d divides=%(divides)s proper=%(proper)s\n" % r)
        sys.stdout.write("%d certificates\n" % len(rows))
    return EXIT_OK


def cmd_census(args):
    cfg = CensusConfig(theta=Fraction(args.theta), threshold_override=args.threshold)
    result = composite_census(args.x, cfg)
    if args.format == "json":
        sys.stdout.write(result.to_json_lines())
    else:
        sys.stdout.write("x=%d threshold=%g x^theta=%.2f\n" % (result.x, result.threshold, result.x_theta))
        sys.stdout.write("C1 composite psi_m: %d\n" % result.c1_composite_count)
        sys.stdout.write("C2 psi_m not a product of two primes: %d\n" % result.c2_not_two_prime_count)
        for e in result.witnessed_m:
            sys.stdout.write("  m=%d %s witness=%d (%s)\n" % (e.m, e.family, e.witness, e.detail))
    return EXIT_OK


def cmd_density(args):
    _emit([density_sum(args.k, True).as_dict(), density_sum(args.k, False).as_dict()], args.format)
    return EXIT_OK


def cmd_constant_c(args):
    c = constant_c()
    _emit({"c": c.value, "lower": c.lower, "upper": c.upper, "width": c.width,
           "zeta3_lower": c.zeta3_lower, "zeta3_upper": c.zeta3_upper}, args.format)
    return EXIT_OK


def cmd_check(args):
    results = run_suite(args.suite, args.limit, args.z)
    if args.format == "json":
        _emit([{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results], "json")
    else:
        for r in results:
            sys.stdout.write(r.line() + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--full", action="store_true", help="print integers of any size in full")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized factoring")
    common.add_argument("--trial-bound", type=int, default=PipelineConfig.trial_bound)

    parser = _Parser(prog="cycloprimes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("value", parents=[common], help="phi_m, delta_m, psi_m and split for one m")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("classify", parents=[common], help="classify n, or phi:M / psi:M / psi+:M / psi-:M")
    p.add_argument("n")
    p.add_argument("--m", type=int, default=None, help="index m whose cyclotomic value n divides")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("split", parents=[common], help="Aurifeuillian split for m = 4 mod 8")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("order", parents=[common], help="order of 2 mod p, or the order map up to --x")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("p", type=int, nargs="?")
    g.add_argument("--x", type=int)
    p.set_defaults(func=cmd_order)

    for name, func, helptext in (("survey", cmd_survey, "count primes for m <= 2^k"),
                                 ("validate", cmd_validate, "compare survey lists with the bundled appendix")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--resume", metavar="PATH", default=None,
                       help="append-only result store (default $%s)" % STORE_ENV)
        if name == "survey":
            p.add_argument("--kmax", type=int, default=10)
        else:
            p.add_argument("--bound", type=int, default=4096)
            p.add_argument("--list", choices=APPENDIX_LISTS)
        p.set_defaults(func=func)

    p = sub.add_parser("sophie", parents=[common], help="Sophie Germain divisors of 2^p - 1")
    p.add_argument("--limit", type=int, default=1000)
    p.add_argument("--p", type=int, default=None)
    p.set_defaults(func=cmd_sophie)

    p = sub.add_parser("census", parents=[common], help="witnessed composite psi_m from small primes")
    p.add_argument("--x", type=int, default=1000)
    p.add_argument("--threshold", type=int, default=None, help="override the order threshold")
    p.add_argument("--theta", default="3/5")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("density", parents=[common], help="sum of the heuristic prime density to 2^k")
    p.add_argument("--k", type=int, default=15)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("constant-c", parents=[common], help="the growth constant c")
    p.set_defaults(func=cmd_constant_c)

    p = sub.add_parser("check", parents=[common], help="run an invariant suite")
    p.add_argument("--suite", required=True, choices=("all",) + tuple(SUITES))
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--z", type=int, default=None)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        ntheory.set_default_seed(args.seed)
    try:
        return args.func(args)
    except StoreError as exc:
        sys.stderr.write("store error: %s\n" % exc)
        return EXIT_IO
    except InvariantViolation as exc:
        sys.stderr.write("invariant violation: %s\n" % exc)
        return EXIT_INVARIANT
    except DomainError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write("I/O error: %s\n" % exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
