"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
Results go to stdout; diagnostics and error records to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction
from math import comb, factorial

from .dirichlet import DirichletCharacter, character_to_json, enumerate_characters
from .errors import DomainError, UsageError
from .exact import CyclotomicNumber, cyclotomic_to_json, format_rational, parse_rational
from .genocchi import multiple_genocchi_numbers
from .lseries import (
    generalized_genocchi,
    l_value_neg,
    l_value_via_partition,
    washington_rhs_at_neg,
    zeta_numeric,
)
from .padic import PrecisionPolicy
from .padic_l import PadicLContext, context_params, lambda_p
from .verify import SUITES, emit_report, run_suite

log = logging.getLogger("mgenocchi")

# defaults live here and are overridable only by flags
DEFAULTS = {
    "n_max": 10,
    "prec": 40,
    "guard": 5,
    "tol": 1e-10,
    "format": "json",
}

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _integer(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return v


def _rational(text: str) -> Fraction:
    return parse_rational(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mgenocchi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default=DEFAULTS["format"])

    p = sub.add_parser("genocchi", help="multiple Genocchi numbers G_0^(w)..G_N^(w)")
    p.add_argument("--w", type=_integer, default=1)
    p.add_argument("--n-max", type=_integer, default=DEFAULTS["n_max"])
    fmt(p)

    p = sub.add_parser("chars", help="character table of (Z/mZ)^*")
    p.add_argument("--modulus", type=_integer, required=True)
    fmt(p)

    p = sub.add_parser("gen-genocchi", help="generalized Genocchi numbers attached to chi")
    p.add_argument("--modulus", type=_integer, required=True)
    p.add_argument("--char", type=_integer, required=True)
    p.add_argument("--w", type=_integer, default=1)
    p.add_argument("--n-max", type=_integer, default=DEFAULTS["n_max"])
    fmt(p)

    p = sub.add_parser("lvalue", help="L^(w)(-n | chi)")
    p.add_argument("--modulus", type=_integer, required=True)
    p.add_argument("--char", type=_integer, required=True)
    p.add_argument("--w", type=_integer, default=1)
    p.add_argument("--n", type=_integer, required=True)
    p.add_argument("--via", choices=("direct", "partition", "washington"), default="direct")
    p.add_argument("--F", type=_integer, default=None)
    fmt(p)

    p = sub.add_parser("zeta-num", help="numeric multiple Genocchi-zeta function")
    p.add_argument("--w", type=_integer, default=1)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--tol", type=float, default=DEFAULTS["tol"])
    fmt(p)

    p = sub.add_parser("padic-l", help="Lambda(s) = w! C(-s,w) L_p^(w)(s+w | chi)")
    p.add_argument("--p", type=_integer, required=True)
    p.add_argument("--prec", type=_integer, default=DEFAULTS["prec"])
    p.add_argument("--modulus", type=_integer, default=1)
    p.add_argument("--char", type=_integer, default=0)
    p.add_argument("--w", type=_integer, default=1)
    p.add_argument("--F", type=_integer, default=None)
    p.add_argument("--s", type=_rational, required=True)
    fmt(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=("all",) + SUITES)
    p.add_argument("--p", type=_integer, default=None)
    p.add_argument("--prec", type=_integer, default=DEFAULTS["prec"])
    p.add_argument("--json", action="store_true", help="same as --format json")
    fmt(p)
    return parser


def _emit_rows(rows: list, fmt: str, header: list[str]) -> str:
    if fmt == "json":
        return json.dumps(rows) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for r in rows:
            writer.writerow(r if isinstance(r, (list, tuple)) else [r])
        return buf.getvalue()
    return "\n".join(" ".join(str(x) for x in (r if isinstance(r, (list, tuple)) else [r])) for r in rows) + "\n"


def _cyc_text(z: CyclotomicNumber) -> str:
    if z.is_rational():
        return format_rational(z.to_rational())
    terms = [f"({format_rational(c)})*z{z.root_order}^{i}" for i, c in enumerate(z.coeffs) if c]
    return " + ".join(terms)


def _emit_cyc(values: list[CyclotomicNumber], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([cyclotomic_to_json(v) for v in values]) + "\n"
    rows = [[n, v.root_order, " ".join(format_rational(c) for c in v.coeffs)] for n, v in enumerate(values)]
    if fmt == "csv":
        return _emit_rows(rows, "csv", ["n", "root_order", "coeffs"])
    return "\n".join(f"{n}: {_cyc_text(v)}" for n, v in enumerate(values)) + "\n"


def _character(args) -> DirichletCharacter:
    return DirichletCharacter.from_label(args.modulus, args.char)


def _cmd_genocchi(args) -> tuple[str, int]:
    table = multiple_genocchi_numbers(args.w, args.n_max)
    vals = table.as_ints()
    if args.format == "csv":
        return _emit_rows([[n, v] for n, v in enumerate(vals)], "csv", ["n", "value"]), EXIT_OK
    return _emit_rows(vals, args.format, ["value"]), EXIT_OK


def _cmd_chars(args) -> tuple[str, int]:
    chars = enumerate_characters(args.modulus)
    if args.format == "json":
        return json.dumps([character_to_json(c, with_values=True) for c in chars], indent=1) + "\n", EXIT_OK
    rows = []
    for c in chars:
        vals = " ".join("." if v is None else str(v) for v in character_to_json(c, True)["values"])
        rows.append([c.label, " ".join(map(str, c.exponents)), c.order, c.conductor, c.is_primitive, vals])
    return _emit_rows(rows, args.format, ["label", "exponents", "order", "conductor", "primitive", "values"]), EXIT_OK


def _cmd_gen_genocchi(args) -> tuple[str, int]:
    return _emit_cyc(generalized_genocchi(_character(args), args.w, args.n_max), args.format), EXIT_OK


def _cmd_lvalue(args) -> tuple[str, int]:
    chi = _character(args)
    w, n = args.w, args.n
    F = args.F or chi.modulus
    if args.via == "direct":
        value = l_value_neg(chi, w, n)
    elif args.via == "partition":
        value = l_value_via_partition(chi, w, n + w, F)
    else:
        value = washington_rhs_at_neg(chi, w, n + w, F) / (factorial(w) * comb(n + w, w))
    if args.format == "json":
        out = {"modulus": chi.modulus, "char": chi.label, "w": w, "s": -n, "via": args.via, "F": F,
               "value": cyclotomic_to_json(value)}
        return json.dumps(out) + "\n", EXIT_OK
    return _emit_cyc([value], args.format), EXIT_OK


def _cmd_zeta_num(args) -> tuple[str, int]:
    value, err = zeta_numeric(args.w, args.s, args.x, args.tol)
    out = {"w": args.w, "s": args.s, "x": format_rational(args.x), "value": value, "error_bound": err}
    if args.format == "json":
        return json.dumps(out) + "\n", EXIT_OK
    return _emit_rows([[value, err]], args.format, ["value", "error_bound"]), EXIT_OK


def _cmd_padic_l(args) -> tuple[str, int]:
    chi = _character(args)
    F = args.F or args.p * chi.modulus
    ctx = PadicLContext(args.p, chi, args.w, F, PrecisionPolicy(args.prec))
    value = lambda_p(ctx, args.s)
    out = {"params": dict(context_params(ctx), s=format_rational(args.s)), "lambda": value.to_json()}
    if args.format == "json":
        return json.dumps(out) + "\n", EXIT_OK
    return f"{value!r}\n", EXIT_OK


def _cmd_verify(args) -> tuple[str, int]:
    fmt = "json" if args.json else args.format
    primes = (args.p,) if args.p else None
    report = run_suite(args.suite, primes, PrecisionPolicy(args.prec))
    return emit_report(report, fmt), EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "genocchi": _cmd_genocchi,
    "chars": _cmd_chars,
    "gen-genocchi": _cmd_gen_genocchi,
    "lvalue": _cmd_lvalue,
    "zeta-num": _cmd_zeta_num,
    "padic-l": _cmd_padic_l,
    "verify": _cmd_verify,
}


def run(argv: list[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write(json.dumps({"error": "usage", "message": str(exc)}) + "\n")
        return EXIT_USAGE
    except (DomainError, ZeroDivisionError) as exc:
        stderr.write(json.dumps({"error": "domain", "message": str(exc)}) + "\n")
        return EXIT_DOMAIN
    stdout.write(text)
    return code


def main() -> None:
    level = os.environ.get("MGENOCCHI_VERBOSITY", "WARNING").upper()
    logging.basicConfig(level=level, stream=sys.stderr)
    sys.exit(run(sys.argv[1:]))
