"""Command-line front end.

Exit codes: 0 ok, 1 parse error, 2 validation failure, 3 cross-check
mismatch, 4 unsupported shape or argument.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import oracle as orc
from .dc import DCPoint, dc_value_mixed, dc_value_nonpos
from .errors import (
    CertificationFailed,
    ExpansionTooLarge,
    NotFactorizable,
    OpaqueValue,
    PolynomialParseError,
    TailDivergent,
    TwistZetaError,
    UnsupportedArgument,
    UnsupportedDepth,
    ValidationError,
    VarArityMismatch,
    WrongShape,
)
from .exact import RootOfUnity, format_scalar
from .expr import ValueExpr
from .lerch import lerch_nonpos
from .partial import simplify, validate, value_auto, value_d1, value_d2, value_general
from .poly import parse_poly
from .singular import candidate_hyperplanes
from .specfile import SpecParseError, load_dc_request, load_spec

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_MISMATCH, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) <= 1e-13 * max(1.0, abs(z.real)):
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _emit_value(e: ValueExpr, args) -> None:
    print(e.render(decimal=getattr(args, "decimal", False)))
    if getattr(args, "numeric", False):
        print(_fmt_complex(e.numeric()))


# ---------------------------------------------------------------------------


def cmd_value(args) -> int:
    sf = load_spec(args.spec)
    spec = sf.spec
    do_simplify = sf.options.simplify and not args.no_simplify
    args.numeric = args.numeric or sf.options.numeric
    trace: list | None = [] if args.trace else None
    N = args.at
    if args.path == "auto":
        value, checks = value_auto(spec, N, simplify=do_simplify, trace=trace)
        bad = [k for k, ok in checks.items() if not ok]
        if bad:
            print(f"cross-check mismatch against path(s): {', '.join(bad)}", file=sys.stderr)
            return EXIT_MISMATCH
    elif args.path == "general":
        value = value_general(spec, N, simplify=do_simplify, trace=trace)
    elif args.path == "d1":
        value = value_d1(spec, N, simplify=do_simplify, trace=trace)
    elif args.path == "d2":
        value = value_d2(spec, N, simplify=do_simplify, trace=trace)
    else:
        value = value_d2(spec, N, variant="simplified", simplify=do_simplify, trace=trace)
    _emit_value(value, args)
    if trace is not None:
        for row in trace:
            print(json.dumps(row, sort_keys=True))
    return EXIT_OK


def cmd_dc(args) -> int:
    req = load_dc_request(args.request)
    if req.k is not None:
        v = dc_value_nonpos(req.polys, [int(x) for x in req.k], req.twists)
        print(format_scalar(v))
        return EXIT_OK
    point = DCPoint(tuple(Fraction(str(a)) for a in req.args), tuple(req.polys), tuple(req.twists))
    value = dc_value_mixed(point)
    if not args.no_simplify:
        value = simplify(value)
    _emit_value(value, args)
    return EXIT_OK


def cmd_lerch(args) -> int:
    mu = RootOfUnity.parse(args.mu)
    if args.arg <= 0:
        print(format_scalar(lerch_nonpos(mu, -args.arg)))
        return EXIT_OK
    value = simplify(ValueExpr.lerch_atom(mu, args.arg))
    _emit_value(value, args)
    return EXIT_OK


def cmd_sing(args) -> int:
    if args.a is not None:
        source = tuple(args.a)
    elif args.spec is not None:
        source = load_spec(args.spec).spec
        report = validate(source)
        if not report.ok:
            raise ValidationError(report.diagnostics)
    else:
        raise SpecParseError(["sing needs a spec file or --a"])
    lo, hi = args.window
    if lo > hi:
        print("[]")
        return EXIT_OK
    report = candidate_hyperplanes(source, (lo, hi), args.max_index)
    entries = report.to_json()
    print("[" + ",\n ".join(json.dumps(e, sort_keys=True) for e in entries) + "]")
    return EXIT_OK


def cmd_check(args) -> int:
    sf = load_spec(args.spec)
    report = validate(sf.spec)
    if report.ok:
        print(report.summary())
        return EXIT_OK
    for d in report.diagnostics:
        print(d, file=sys.stderr)
    return EXIT_INVALID


def cmd_oracle(args) -> int:
    kind = args.oracle
    if kind == "binomial":
        res = orc.n1_binomial_continuation(parse_poly(args.poly, 1), complex(args.s), M=args.M, K=args.K)
        print(json.dumps(res.to_json()))
    elif kind == "mb":
        print(json.dumps({"residual": orc.mb_identity_check(complex(args.s), complex(args.lam), args.c, args.height)}))
    elif kind == "mmb":
        print(json.dumps({"residual": orc.mmb_identity_check(complex(args.s), args.lams, args.rhos, args.height)}))
    elif kind in ("factorized", "direct"):
        spec = load_spec(args.spec).spec
        report = validate(spec)
        if not report.ok:
            raise ValidationError(report.diagnostics)
        fn = orc.factorized_series_oracle if kind == "factorized" else orc.direct_series_sum
        print(json.dumps(fn(spec, [complex(x) for x in args.at]).to_json()))
    elif kind == "abel":
        res = orc.abel_numeric(RootOfUnity.parse(args.mu), args.n)
        print(json.dumps(res.to_json()))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistzeta", description="Special values of partially twisted multiple zeta-functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("value", help="value at s = -N")
    v.add_argument("spec")
    v.add_argument("--at", type=_int_list, required=True, help="N as comma-separated integers")
    v.add_argument("--path", choices=["auto", "general", "d1", "d2", "d2-simplified"], default="auto")
    v.add_argument("--numeric", action="store_true")
    v.add_argument("--trace", action="store_true")
    v.add_argument("--decimal", action="store_true")
    v.add_argument("--no-simplify", action="store_true")
    v.set_defaults(func=cmd_value)

    d = sub.add_parser("dc", help="fully twisted value at an integer point")
    d.add_argument("request")
    d.add_argument("--numeric", action="store_true")
    d.add_argument("--decimal", action="store_true")
    d.add_argument("--no-simplify", action="store_true")
    d.set_defaults(func=cmd_dc)

    le = sub.add_parser("lerch", help="zeta_mu at an integer")
    le.add_argument("--mu", required=True, help="a/b for mu = exp(2 pi i a/b)")
    le.add_argument("--arg", type=int, required=True)
    le.add_argument("--numeric", action="store_true")
    le.set_defaults(func=cmd_lerch)

    s = sub.add_parser("sing", help="candidate singular hyperplanes in s_T")
    s.add_argument("spec", nargs="?")
    s.add_argument("--a", type=_int_list, help="exponents a_0,...,a_d instead of a spec file")
    s.add_argument("--window", type=_fraction, nargs=2, default=[Fraction(-3), Fraction(2)], metavar=("LO", "HI"))
    s.add_argument("--max-index", type=int, default=20)
    s.set_defaults(func=cmd_sing)

    c = sub.add_parser("check", help="validate a spec file")
    c.add_argument("spec")
    c.set_defaults(func=cmd_check)

    o = sub.add_parser("oracle", help="numeric oracles")
    osub = o.add_subparsers(dest="oracle", required=True, parser_class=_Parser)
    b = osub.add_parser("binomial")
    b.add_argument("--poly", required=True)
    b.add_argument("--s", required=True)
    b.add_argument("--M", type=int, default=8)
    b.add_argument("--K", type=int, default=40)
    m = osub.add_parser("mb")
    m.add_argument("--s", required=True)
    m.add_argument("--lam", required=True)
    m.add_argument("--c", type=float, default=-0.5)
    m.add_argument("--height", type=float, default=40.0)
    mm = osub.add_parser("mmb")
    mm.add_argument("--s", required=True)
    mm.add_argument("--lams", type=_float_list, required=True)
    mm.add_argument("--rhos", type=_float_list, required=True)
    mm.add_argument("--height", type=float, default=30.0)
    for name in ("factorized", "direct"):
        f = osub.add_parser(name)
        f.add_argument("spec")
        f.add_argument("--at", type=_float_list, required=True)
    ab = osub.add_parser("abel")
    ab.add_argument("--mu", required=True)
    ab.add_argument("--n", type=int, required=True)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecParseError, PolynomialParseError) as exc:
        for d in getattr(exc, "diagnostics", [str(exc)]):
            print(f"parse error: {d}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, CertificationFailed) as exc:
        for d in getattr(exc, "diagnostics", [f"CertificationFailed: {exc}"]):
            print(d, file=sys.stderr)
        return EXIT_INVALID
    except (WrongShape, UnsupportedArgument, UnsupportedDepth, OpaqueValue, NotFactorizable, VarArityMismatch) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ExpansionTooLarge, TailDivergent) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (TwistZetaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
