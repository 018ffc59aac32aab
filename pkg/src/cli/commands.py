"""Subcommand handlers. Each takes the parsed argparse namespace and returns
the success envelope as a dict; errors propagate to `src.cli.main`."""

import sys

from src.cli.schemas import CommandResponse
from src.cli.services import FAMILY_COLUMNS, LATTES_COLUMNS, ScanServices, scan_family_member, scan_lattes_member
from src.errors import DomainError
from src.exactnum.models import INFINITY, rat_to_str
from src.family.models import StandardPair
from src.family.schemas import EvalReport
from src.family.services import FamilyServices
from src.lattes.models import Cubic, EllipticPoint
from src.lattes.services import LattesServices
from src.reduction.schemas import GlobalDiscriminant, GlobalDiscriminantEntry
from src.reduction.services import ReductionServices

family_services = FamilyServices()
lattes_services = LattesServices()
reduction_services = ReductionServices()
scan_services = ScanServices()


def _dump(model) -> dict:
    return model.model_dump(mode="json", by_alias=True)


def _respond(message: str, data: dict) -> dict:
    return CommandResponse(success=True, message=message, data=data).model_dump(mode="json")


def pair_from_args(args) -> StandardPair:
    return StandardPair(d=args.d, lam=args.lam, A=args.A, B=args.B)


def cmd_eval(args) -> dict:
    pair = pair_from_args(args)
    membership = family_services.is_member(pair)
    report = EvalReport(
        pair=pair,
        wronskian=family_services.wronskian(pair),
        delta=membership.delta,
        membership=membership,
    )
    return _respond("critical discriminant computed", _dump(report))


def cmd_minimize(args) -> dict:
    pair = pair_from_args(args)
    family_services.require_member(pair)
    if args.global_:
        gd = reduction_services.minimal_critical_discriminant(pair, args.m_max)
        data = {"global": _dump(gd), "szpiro": _dump(reduction_services.szpiro_report(gd, pair.d))}
        return _respond("minimal critical discriminant computed", data)

    result = reduction_services.local_minimize(pair, args.p, args.m_max)
    entries = [GlobalDiscriminantEntry(p=result.p, delta=result.delta, certified=result.certified)] if result.delta else []
    gd = GlobalDiscriminant(excluded_primes=sorted(reduction_services.s_lambda(pair.lam)), entries=entries)
    data = {"local": _dump(result), "szpiro": _dump(reduction_services.szpiro_report(gd, pair.d))}
    return _respond(f"local minimization at p = {result.p} finished", data)


def cmd_lattes(args) -> dict:
    cubic = Cubic(a=args.a, b=args.b, c=args.c)
    pair = lattes_services.build_lattes(cubic)
    data = {
        "cubic": _dump(cubic),
        "pair": _dump(pair),
        "invariants": _dump(lattes_services.weierstrass_invariants(cubic)),
    }
    if args.verify:
        data["identities"] = _dump(lattes_services.verify_identities(cubic))
    if args.double is not None:
        point = EllipticPoint.affine(*args.double)
        doubled = lattes_services.double_point(point, cubic)
        x_via_map = lattes_services.lattes_x_of_double(point, cubic)
        data["double"] = {
            "point": _dump(point),
            "doubled": _dump(doubled),
            "x_via_lattes": "infinity" if x_via_map == INFINITY else rat_to_str(x_via_map),
            "commutes": x_via_map == (INFINITY if doubled.infinity else doubled.x),
        }
    if args.reduction_type is not None:
        data["reduction_type"] = _dump(lattes_services.reduction_type_at(cubic, args.reduction_type))
    if args.szpiro:
        data["szpiro"] = _dump(lattes_services.curve_szpiro_report(cubic, args.m_max))
    return _respond("Lattes map built", data)


def cmd_reduce(args) -> dict:
    pair = pair_from_args(args)
    _, _, report = reduction_services.reduce_map(pair, args.p)
    return _respond(f"pair reduced modulo {report.p}", {"pair": _dump(pair), "reduction": _dump(report)})


def cmd_quadratic(args) -> dict:
    pair = pair_from_args(args)
    model, check = reduction_services.quadratic_bound_model(pair, args.p)
    return _respond("quadratic model built", {"model": _dump(model), "check": _dump(check)})


def cmd_scan(args) -> int:
    if args.family == "lattes":
        members, worker, columns = scan_services.lattes_grid(args.range), scan_lattes_member, LATTES_COLUMNS
    else:
        members, worker, columns = scan_services.family_grid(args.d, args.lam, args.range), scan_family_member, FAMILY_COLUMNS
    if args.jobs < 1:
        raise DomainError("--jobs must be at least 1")

    if args.out:
        try:
            stream = open(args.out, "w", newline="")
        except OSError as exc:
            raise DomainError(f"cannot write {args.out}: {exc.strerror}")
    else:
        stream = sys.stdout

    try:
        rows, skipped = scan_services.run(worker, members, args.jobs, args.m_max)
        scan_services.write_csv(stream, columns, rows, skipped)
    finally:
        if stream is not sys.stdout:
            stream.close()

    print(
        f"scanned {len(members)} members: {len(rows)} rows, {skipped} skipped, "
        f"max ratio {scan_services.max_ratio(rows) or 'undefined'}",
        file=sys.stderr,
    )
    return 0
