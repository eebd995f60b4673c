"""Command-line entry point: ``sqrtvelu <command> ...``.

Exit codes: 0 ok, 1 selftest failure, 2 usage or parse error (including a
kernel point of the wrong order), 3 other math-domain errors.
"""

from __future__ import annotations

import argparse
import sys

from . import bench, selftest
from .csidh import PrivateKey, PublicCurve, UnknownParams, action, base_curve, params
from .curve import CurveError, MontgomeryCurve, XPoint
from .field import FieldContext, FieldError, OpTally, parse_int
from .isogeny import DEFAULT_CROSSOVER, EngineChoice, isogeny_eval
from .progressions import ap_index_pair, factorial_mod, geometric_hs
from .velusqrt import InvalidTuning, VeluError, WrongOrder

EXIT_OK, EXIT_SELFTEST, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _hex(text: str) -> int:
    try:
        return parse_int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex integer: {text!r}") from None


def _engine(args) -> EngineChoice:
    return EngineChoice(args.engine, args.crossover, args.b)


def _add_engine_args(sp, default="auto"):
    sp.add_argument("--engine", choices=("conventional", "sqrt", "auto"), default=default)
    sp.add_argument("--crossover", type=int, default=DEFAULT_CROSSOVER, help="auto mode uses the sqrt engine from this ell up")
    sp.add_argument("--b", type=int, default=None, help="override the index-system parameter b")


def _point_hex(Q: XPoint) -> str:
    return "inf" if Q.is_infinity() else Q.affine().hex()


def cmd_selftest(args, out) -> int:
    only = args.filter or None
    try:
        ok = selftest.run(only, out=out)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    return EXIT_OK if ok else EXIT_SELFTEST


def cmd_isogeny(args, out) -> int:
    F = FieldContext(args.prime)
    E = MontgomeryCurve.from_a(F(args.a))
    P = XPoint.from_x(F(args.xp))
    push = [XPoint.from_x(F(v)) for v in args.push]
    t = OpTally()
    res = isogeny_eval(E, P, args.ell, push, _engine(args), t)
    out(f"a' = {res.codomain.a().hex()}")
    for v, Q in zip(args.push, res.images):
        out(f"phi({v:x}) = {_point_hex(Q)}")
    out(f"ops: {t} muls+sqrs={t.muls}")
    return EXIT_OK


def _parse_ells(text: str, available) -> list[int]:
    text = text.strip()
    if text in ("", "all"):
        return list(available)
    if ":" in text:
        lo, _, hi = text.partition(":")
        lo = int(lo) if lo else 0
        hi = int(hi) if hi else max(available)
        return [e for e in available if lo <= e <= hi]
    want = {int(t) for t in text.split(",")}
    missing = want - set(available)
    if missing:
        raise UsageError(f"not in the parameter set: {sorted(missing)}")
    return sorted(want)


def cmd_crossover(args, out) -> int:
    prm = params(args.params)
    ells = _parse_ells(args.ells, prm.ells)
    if not ells:
        raise UsageError("empty ell range")
    pairs = bench.crossover_rows(prm.p, ells, args.b_sweep, args.workers)
    text = bench.to_csv(pairs)
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        out(text.rstrip("\n"))
    star = bench.crossover_ell(pairs)
    out(f"crossover ell* = {star if star is not None else 'none'} (first win: {bench.first_win(pairs)})")
    return EXIT_OK


def cmd_csidh(args, out) -> int:
    prm = params(args.params)
    try:
        key = PrivateKey.parse(args.key, prm)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    start = PublicCurve.from_hex(prm, args.start) if args.start else base_curve(prm)
    t = OpTally()
    res = action(prm, key, start, _engine(args), args.seed, t)
    out(f"a = {res.hex()}")
    out(f"ops: {t} muls+sqrs={t.muls}")
    return EXIT_OK


def cmd_factorial(args, out) -> int:
    if args.ell < 1 or args.mod < 2:
        raise UsageError("need --ell >= 1 and --mod >= 2")
    out(str(factorial_mod(args.ell, args.mod)))
    return EXIT_OK


def cmd_qfact(args, out) -> int:
    try:
        m, r, n = (int(t) for t in args.range.split(":"))
    except ValueError:
        raise UsageError("--range must be m:r:n") from None
    if n < 0 or r == 0:
        raise UsageError("--range needs n >= 0 and r != 0")
    F = FieldContext(args.prime)
    zeta = F(args.zeta)
    if zeta.is_zero():
        raise UsageError("--zeta must be nonzero mod p")
    out(geometric_hs(zeta, ap_index_pair(m, r, n), F(args.alpha)).hex())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sqrtvelu", description="Square-root Velu isogenies with operation counting.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("selftest", help="run the toy-scale invariant suites")
    sp.add_argument("--filter", action="append", metavar="SUITE", help=f"only these suites ({', '.join(selftest.SUITES)})")
    sp.set_defaults(func=cmd_selftest)

    sp = sub.add_parser("isogeny", help="evaluate one ell-isogeny (hex inputs)")
    sp.add_argument("--prime", type=_hex, required=True)
    sp.add_argument("--a", type=_hex, required=True, help="affine Montgomery coefficient")
    sp.add_argument("--xp", type=_hex, required=True, help="x-coordinate of a kernel generator")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--push", type=_hex, nargs="*", default=[])
    _add_engine_args(sp)
    sp.set_defaults(func=cmd_isogeny)

    sp = sub.add_parser("crossover", help="operation counts per ell for both engines, as CSV")
    sp.add_argument("--params", default="csidh512")
    sp.add_argument("--ells", default="all", help="'all', 'lo:hi' or a comma list")
    sp.add_argument("--b-sweep", type=int, default=bench.DEFAULT_WIDTH, help="tuning window half-width around the default b")
    sp.add_argument("--out", default="-", help="CSV path ('-' for stdout)")
    sp.add_argument("--workers", type=int, default=None, help=f"process count (default ${bench.THREADS_ENV} or all CPUs)")
    sp.set_defaults(func=cmd_crossover)

    sp = sub.add_parser("csidh", help="apply a CSIDH private key")
    sp.add_argument("--params", default="toy419")
    sp.add_argument("--key", default="", help="comma-separated decimal exponents")
    sp.add_argument("--start", default=None, help="hex coefficient of the starting curve (default 0)")
    sp.add_argument("--seed", type=int, default=0)
    _add_engine_args(sp)
    sp.set_defaults(func=cmd_csidh)

    sp = sub.add_parser("factorial", help="ell! mod n by the blocked method")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--mod", type=int, required=True)
    sp.set_defaults(func=cmd_factorial)

    sp = sub.add_parser("qfact", help="prod (alpha - zeta^s) over s = m, m+r, ..., m+(n-1)r")
    sp.add_argument("--zeta", type=_hex, required=True)
    sp.add_argument("--prime", type=_hex, required=True)
    sp.add_argument("--range", required=True, metavar="m:r:n")
    sp.add_argument("--alpha", type=_hex, required=True)
    sp.set_defaults(func=cmd_qfact)
    return ap


def main(argv=None, out=print, err=None) -> int:
    err = err or (lambda msg: print(msg, file=sys.stderr))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, UnknownParams, InvalidTuning, WrongOrder) as exc:
        err(f"error: {exc.args[0] if exc.args else exc}")
        return EXIT_USAGE
    except ValueError as exc:
        if isinstance(exc, (FieldError, CurveError, VeluError)):
            err(f"math error: {exc}")
            return EXIT_MATH
        err(f"error: {exc}")
        return EXIT_USAGE
    except (FieldError, CurveError, VeluError, ArithmeticError) as exc:
        err(f"math error: {exc}")
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
