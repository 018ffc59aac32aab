"""critdisc command line.

    critdisc eval --d 4 --lambda 4 --A "x^4-2x^2+1" --B "4x^3+4x"
    critdisc minimize --d 4 --lambda 4 --A ... --B ... (--p 5 | --global) [--m-max 2]
    critdisc lattes --a 0 --b -1 --c 1 [--verify] [--double 0 1] [--reduction-type 23] [--szpiro]
    critdisc scan --family lattes --range -2 2 -2 2 -2 2 [--out rows.csv] [--jobs 4]
    critdisc scan --family f --d 2 --lambda 1 --range -5 5
    critdisc reduce --d 2 --lambda 1 --A "x^2+1" --B "x" --p 5
    critdisc quadratic --d 2 --lambda 1 --A "x^2+16" --B "x" --p 2

JSON goes to stdout, diagnostics and errors to stderr. Exit codes: 0 ok,
1 domain or parse error, 2 not a member of F_{d,lambda}, 3 failed
internal-consistency check.
"""

import argparse
import json
import logging
import sys

from pydantic import ValidationError

from src.cli.commands import cmd_eval, cmd_lattes, cmd_minimize, cmd_quadratic, cmd_reduce, cmd_scan
from src.cli.schemas import ErrorResponse
from src.config import Config
from src.errors import CritDiscException, ParseError

logger = logging.getLogger(__name__)


class CritDiscParser(argparse.ArgumentParser):
    """Raises ParseError on usage errors instead of exiting."""

    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


def _add_pair_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--d", type=int, required=True, help="degree of the map")
    parser.add_argument("--lambda", dest="lam", required=True, help="multiplier at infinity, e.g. 4 or 3/2")
    parser.add_argument("--A", required=True, help="monic numerator of degree d")
    parser.add_argument("--B", required=True, help="denominator of degree d-1 with leading coefficient lambda")


def _add_m_max(parser: argparse.ArgumentParser):
    parser.add_argument("--m-max", type=int, default=None, help="deepest descent jump (default CRITDISC_M_MAX)")


def build_parser() -> argparse.ArgumentParser:
    parser = CritDiscParser(prog="critdisc", description="Critical discriminants of rational maps fixing infinity")
    sub = parser.add_subparsers(dest="command", required=True)

    evaluate = sub.add_parser("eval", help="Wronskian, critical discriminant and membership")
    _add_pair_arguments(evaluate)
    evaluate.set_defaults(handler=cmd_eval)

    minimize = sub.add_parser("minimize", help="delta_p at one prime or the global Delta(phi)")
    _add_pair_arguments(minimize)
    where = minimize.add_mutually_exclusive_group(required=True)
    where.add_argument("--p", type=int)
    where.add_argument("--global", dest="global_", action="store_true")
    _add_m_max(minimize)
    minimize.set_defaults(handler=cmd_minimize)

    lattes = sub.add_parser("lattes", help="the Lattes map of y^2 = x^3 + ax^2 + bx + c")
    lattes.add_argument("--a", required=True)
    lattes.add_argument("--b", required=True)
    lattes.add_argument("--c", required=True)
    lattes.add_argument("--verify", action="store_true", help="check the discriminant identities")
    lattes.add_argument("--double", nargs=2, metavar=("X", "Y"), help="double the point (X, Y)")
    lattes.add_argument("--reduction-type", type=int, metavar="P", help="classify the curve at an odd prime")
    lattes.add_argument("--szpiro", action="store_true", help="curve-wide Szpiro comparison")
    _add_m_max(lattes)
    lattes.set_defaults(handler=cmd_lattes)

    scan = sub.add_parser("scan", help="CSV of Szpiro ratios over a family")
    scan.add_argument("--family", choices=["lattes", "f"], required=True)
    scan.add_argument("--range", type=int, nargs="+", required=True)
    scan.add_argument("--d", type=int)
    scan.add_argument("--lambda", dest="lam")
    scan.add_argument("--out")
    scan.add_argument("--jobs", type=int, default=1)
    _add_m_max(scan)
    scan.set_defaults(handler=cmd_scan)

    reduce = sub.add_parser("reduce", help="reduce an integral pair modulo p")
    _add_pair_arguments(reduce)
    reduce.add_argument("--p", type=int, required=True)
    reduce.set_defaults(handler=cmd_reduce)

    quadratic = sub.add_parser("quadratic", help="the x^2 + a, lambda x model at p for d = 2")
    _add_pair_arguments(quadratic)
    quadratic.add_argument("--p", type=int, required=True)
    quadratic.set_defaults(handler=cmd_quadratic)

    return parser


def format_validation_errors(errors):
    formatted = []
    for err in errors:
        field = ".".join(str(loc) for loc in err["loc"])
        formatted.append({
            "field": field,
            "message": err["msg"]
        })
    return formatted


def handle_exception(exc: Exception) -> int:
    """Write the error envelope to stderr and return the exit code."""
    if isinstance(exc, ValidationError):
        response = ErrorResponse(message="Validation error", errors=format_validation_errors(exc.errors()))
        exit_code = 1
    else:
        response = ErrorResponse(message=exc.detail)
        exit_code = exc.exit_code
    print(json.dumps(response.model_dump()), file=sys.stderr)
    return exit_code


def main(argv=None) -> int:
    logging.basicConfig(level=Config.LOG_LEVEL, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        result = args.handler(args)
    except (CritDiscException, ValidationError) as exc:
        return handle_exception(exc)
    if isinstance(result, int):
        return result
    print(json.dumps(result))
    return 0


def main_exit():
    sys.exit(main())
