"""Command-line front end.

Exit codes: 0 on success, 1 when a resource ceiling refuses the computation,
2 on usage, parse or coverage errors. Results go to stdout, diagnostics to
stderr.
"""

import argparse
import contextlib
import json
import logging
import sys
from collections.abc import Sequence
from typing import TextIO

from . import limits
from .abelian import max_abelian
from .collect import verify_e1_congruence
from .descriptor import parse
from .exceptions import ClassNotCoveredError, ResourceLimitError
from .gamma import gamma
from .hall import generate, render
from .pgroups import (
    Abelian,
    Descriptor,
    ExtraSpecial,
    Product,
    attains_order_bound,
    capability,
    format_order,
    format_power,
    log_order_json,
    multiplier,
    order_bound_exponent,
)
from .witt import witt, witt_table

logger = logging.getLogger("nilmult")

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    """ :meta private: """


# region Helpers

def _emit_json(out: TextIO, payload: dict[str, object]) -> None:
    out.write(json.dumps(payload, sort_keys=True) + "\n")


def _warn_informational_variant(g: Descriptor) -> None:
    parts = g.factors if isinstance(g, Product) else (g,)
    for part in parts:
        if isinstance(part, ExtraSpecial) and part.m > 1:
            logger.warning("variant of %s is informational for m > 1", part)


def _abelian_arg(text: str) -> Abelian:
    g = parse(text)
    if not isinstance(g, Abelian):
        raise UsageError(f"gamma needs abelian groups, got {g}")
    return g

# endregion Helpers


# region Commands

def _cmd_multiplier(args: argparse.Namespace, out: TextIO) -> None:
    g = parse(args.group)
    _warn_informational_variant(g)
    result = multiplier(g, args.c)
    if args.json:
        _emit_json(out, {"command": "multiplier", "group": str(g), "c": args.c,
                         "multiplier": result.to_json(), "provenance": result.provenance})
        return
    out.write(f"{result}  [{result.provenance}]\n")


def _cmd_capability(args: argparse.Namespace, out: TextIO) -> None:
    g = parse(args.group)
    verdict = capability(g, args.c)
    if args.json:
        _emit_json(out, {"command": "capability", "group": str(g), "c": args.c,
                         "capable": verdict.capable, "c_capable": verdict.c_capable,
                         "reason": verdict.reason})
        return
    out.write(f"capable={str(verdict.capable).lower()} "
              f"c_capable={str(verdict.c_capable).lower()}  [{verdict.reason}]\n")


def _cmd_bound(args: argparse.Namespace, out: TextIO) -> None:
    if args.group is None:
        if args.n is None:
            raise UsageError("bound needs --n or a group")
        exponent = order_bound_exponent(args.n, args.m, args.c)
        if args.json:
            _emit_json(out, {"command": "bound", "n": args.n, "m": args.m, "c": args.c,
                             "exponent": exponent})
            return
        out.write(f"bound(n={args.n}, m={args.m}, c={args.c}) = p^{exponent}\n")
        return

    g = parse(args.group)
    attained = attains_order_bound(g, args.c)
    p = g.primes[0]
    n = _log(g.order, p)
    exponent = order_bound_exponent(n, 1, args.c)
    result = multiplier(g, args.c)
    actual = result.log_order(p)
    if args.json:
        _emit_json(out, {"command": "bound", "group": str(g), "n": n, "m": 1, "c": args.c,
                         "exponent": exponent, "multiplier_exponent": actual,
                         "attained": attained})
        return
    out.write(f"{g}: |M| = {format_power(result.order_exponents)}, bound {p}^{exponent}, "
              f"{'attained' if attained else 'strict'}\n")


def _log(value: int, p: int) -> int:
    k = 0
    while value % p == 0 and value > 1:
        value //= p
        k += 1
    return k


def _cmd_witt(args: argparse.Namespace, out: TextIO) -> None:
    if args.table:
        rows = witt_table(args.max_weight, args.d)
        if args.json:
            _emit_json(out, {"command": "witt", "d": args.d,
                             "table": [{"n": r.weight, "value": r.value} for r in rows]})
            return
        for row in rows:
            out.write(f"{row.weight}\t{row.value}\n")
        return
    if args.n is None:
        raise UsageError("witt needs --n (or --table)")
    value = witt(args.n, args.d)
    if args.json:
        _emit_json(out, {"command": "witt", "n": args.n, "d": args.d, "value": value})
        return
    out.write(f"{value}\n")


def _cmd_hall(args: argparse.Namespace, out: TextIO) -> None:
    basis = generate(args.d, args.max_weight)
    if args.json:
        _emit_json(out, {"command": "hall", "d": args.d, "max_weight": args.max_weight,
                         "elements": [render(bc) for bc in basis]})
        return
    for i, bc in enumerate(basis, start=1):
        out.write(f"{i}\t{bc.weight}\t{render(bc)}\n")


def _cmd_gamma(args: argparse.Namespace, out: TextIO) -> None:
    a, b = _abelian_arg(args.a), _abelian_arg(args.b)
    result = gamma(a.group, b.group, args.c)
    if args.json:
        _emit_json(out, {
            "command": "gamma", "a": str(a), "b": str(b), "c": args.c,
            "group": result.group.to_json(),
            "log_order": log_order_json(result.group.order_exponents),
            "terms": [{"content": list(t.content),
                       "commutators": [render(bc) for bc in t.commutators],
                       "term": t.term.to_json(),
                       "log_order": log_order_json(t.term.order_exponents)}
                      for t in result.terms],
        })
        return
    for term in result.terms:
        names = ",".join(render(bc) for bc in term.commutators)
        out.write(f"{names}\t(a^{term.content[0]} b^{term.content[1]})\t{term.term}\t"
                  f"{format_power(term.term.order_exponents)}\n")
    out.write(f"Gamma_{args.c + 1} = {result.group}\n")


def _cmd_verify_e1(args: argparse.Namespace, out: TextIO) -> None:
    report = verify_e1_congruence(args.p, args.c)
    if args.json or args.dump_lattice:
        payload: dict[str, object] = {"command": "verify-e1", **report.to_json()}
        if not args.dump_lattice:
            payload.pop("lattice")
        _emit_json(out, payload)
        return
    if report.holds:
        out.write(f"congruence holds; M^({args.c})(E1) = {report.quotient}\n")
        return
    index = "infinite" if report.index is None else format_order(report.index)
    out.write(f"congruence fails; quotient = {report.quotient} "
              f"(index {index}, expected {format_order(report.expected_index)})\n")


def _cmd_maximize(args: argparse.Namespace, out: TextIO) -> None:
    report = max_abelian(args.n, args.c)
    if args.json:
        _emit_json(out, {
            "command": "maximize", "n": args.n, "c": args.c,
            "best": [{"parts": list(b.parts), "value": b.value} for b in report.best],
            "second": [{"parts": list(s.parts), "value": s.value} for s in report.second],
        })
        return
    for item in report.best:
        out.write(f"max\t{item.parts}\t{item.value}\n")
    for item in report.second:
        out.write(f"second\t{item.parts}\t{item.value}\n")

# endregion Commands


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--c", type=int, default=2, help="nilpotency class (default 2)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    common.add_argument("--basis-ceiling", type=int, default=None)
    common.add_argument("--series-ceiling", type=int, default=None)
    common.add_argument("--partition-ceiling", type=int, default=None)
    common.add_argument("--max-c", type=int, default=None,
                        help="largest class accepted by verify-e1")

    parser = argparse.ArgumentParser(
        prog="nilmult", description="c-nilpotent multipliers of finite p-groups")
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("multiplier", parents=[common], help="multiplier of a group")
    cmd.add_argument("group")
    cmd.set_defaults(handler=_cmd_multiplier)

    cmd = sub.add_parser("capability", parents=[common], help="capability verdicts")
    cmd.add_argument("group")
    cmd.set_defaults(handler=_cmd_capability)

    cmd = sub.add_parser("bound", parents=[common], help="order bound for |G'| = p^m")
    cmd.add_argument("group", nargs="?")
    cmd.add_argument("--n", type=int)
    cmd.add_argument("--m", type=int, default=1)
    cmd.set_defaults(handler=_cmd_bound)

    cmd = sub.add_parser("witt", parents=[common], help="Witt formula")
    cmd.add_argument("--n", type=int)
    cmd.add_argument("--d", type=int, required=True)
    cmd.add_argument("--table", action="store_true")
    cmd.add_argument("--max-weight", type=int, default=8)
    cmd.set_defaults(handler=_cmd_witt)

    cmd = sub.add_parser("hall", parents=[common], help="Hall basis listing")
    cmd.add_argument("--d", type=int, required=True)
    cmd.add_argument("--max-weight", type=int, required=True)
    cmd.set_defaults(handler=_cmd_hall)

    cmd = sub.add_parser("gamma", parents=[common], help="Gamma_{c+1}(A, B) term table")
    cmd.add_argument("a")
    cmd.add_argument("b")
    cmd.set_defaults(handler=_cmd_gamma)

    cmd = sub.add_parser("verify-e1", parents=[common], help="free-group congruence oracle")
    cmd.add_argument("--p", type=int, required=True)
    cmd.add_argument("--dump-lattice", action="store_true")
    cmd.set_defaults(handler=_cmd_verify_e1)

    cmd = sub.add_parser("maximize", parents=[common], help="abelian maximization scan")
    cmd.add_argument("--n", type=int, required=True)
    cmd.set_defaults(handler=_cmd_maximize)
    return parser


def _apply_ceilings(args: argparse.Namespace) -> None:
    if args.basis_ceiling is not None:
        limits.set_basis_ceiling(args.basis_ceiling)
    if args.series_ceiling is not None:
        limits.set_series_ceiling(args.series_ceiling)
    if args.partition_ceiling is not None:
        limits.set_partition_ceiling(args.partition_ceiling)
    if args.max_c is not None:
        limits.set_oracle_class_ceiling(args.max_c)


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    """Runs one command and returns its exit code."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        # argparse prints usage and help itself
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    handler = logging.StreamHandler(err)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if args.verbose else logging.WARNING)
    _apply_ceilings(args)
    try:
        args.handler(args, out)
    except ResourceLimitError as exc:
        err.write(f"refused: {exc}\n")
        return EXIT_REFUSED
    except (ValueError, ClassNotCoveredError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    finally:
        limits.reset_ceilings()
        logger.removeHandler(handler)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
