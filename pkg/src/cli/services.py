"""Family scans: Szpiro ratios of Delta(phi) over integer grids.

Workers only see plain tuples and return `ScanRow`s or None (a skipped
degenerate member), so `ProcessPoolExecutor.map` keeps the input order.
"""

import csv
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from src.cli.schemas import ScanRow
from src.errors import DomainError
from src.exactnum.models import rat_to_str, to_rat
from src.family.models import StandardPair
from src.family.services import FamilyServices
from src.lattes.models import Cubic
from src.lattes.services import LattesServices
from src.reduction.services import ReductionServices

logger = logging.getLogger(__name__)

family_services = FamilyServices()
lattes_services = LattesServices()
reduction_services = ReductionServices()

LATTES_COLUMNS = ["a", "b", "c"]
FAMILY_COLUMNS = ["A", "B"]
REPORT_COLUMNS = ["norm_delta", "norm_radical", "ratio", "all_certified", "ms"]


def _ratio_value(text: str):
    whole, _, frac = text.partition(".")
    return to_rat(f"{whole}{frac}/{10 ** len(frac)}")


def _scan_pair(pair: StandardPair, key: tuple[str, ...], m_max: int | None) -> ScanRow:
    started = time.perf_counter()
    gd = reduction_services.minimal_critical_discriminant(pair, m_max)
    report = reduction_services.szpiro_report(gd, pair.d)
    return ScanRow(
        key=key,
        norm_delta=report.norm_delta,
        norm_radical=report.norm_radical,
        ratio=report.ratio,
        all_certified=report.all_certified,
        ms=(time.perf_counter() - started) * 1000,
    )


def scan_lattes_member(coefficients: tuple[int, int, int], m_max: int | None = None) -> ScanRow | None:
    cubic = Cubic(a=coefficients[0], b=coefficients[1], c=coefficients[2])
    if not cubic.is_elliptic():
        return None
    key = tuple(str(value) for value in coefficients)
    return _scan_pair(lattes_services.build_lattes(cubic), key, m_max)


def scan_family_member(member: tuple[int, str, tuple[int, ...]], m_max: int | None = None) -> ScanRow | None:
    """member = (d, lambda, (a_0..a_{d-2}, b_0..b_{d-3})) of a centred pair."""
    d, lam, free = member
    lam = to_rat(lam)
    a = list(free[: d - 1]) + [0]
    b = list(free[d - 1 :]) + [0]
    pair = StandardPair.from_coefficients(d, lam, a, b)
    if family_services.critical_discriminant(pair) == 0:
        return None
    return _scan_pair(pair, (str(pair.A), str(pair.B)), m_max)


class ScanServices:

    def lattes_grid(self, ranges: list[int]) -> list[tuple[int, int, int]]:
        if len(ranges) != 6:
            raise DomainError("--family lattes needs --range amin amax bmin bmax cmin cmax")
        a_lo, a_hi, b_lo, b_hi, c_lo, c_hi = ranges
        return list(itertools.product(range(a_lo, a_hi + 1), range(b_lo, b_hi + 1), range(c_lo, c_hi + 1)))

    def family_grid(self, d: int, lam, ranges: list[int]) -> list[tuple[int, str, tuple[int, ...]]]:
        if len(ranges) != 2:
            raise DomainError("--family f needs --range lo hi")
        if d is None or d < 2:
            raise DomainError("--family f needs --d >= 2")
        if lam is None or to_rat(lam) == 0:
            raise DomainError("--family f needs a nonzero --lambda")
        lo, hi = ranges
        free = 2 * d - 3
        lam = rat_to_str(to_rat(lam))
        return [(d, lam, values) for values in itertools.product(range(lo, hi + 1), repeat=free)]

    def run(self, worker, members: list, jobs: int = 1, m_max: int | None = None) -> tuple[list[ScanRow], int]:
        """Evaluate every member, in input order; returns (rows, skipped)."""
        task = partial(worker, m_max=m_max)
        if jobs > 1 and len(members) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(task, members, chunksize=max(1, len(members) // (4 * jobs))))
        else:
            results = [task(member) for member in members]
        rows = [row for row in results if row is not None]
        skipped = len(results) - len(rows)
        logger.info("scan finished: %s rows, %s skipped", len(rows), skipped)
        return rows, skipped

    def write_csv(self, stream, columns: list[str], rows: list[ScanRow], skipped: int):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns + REPORT_COLUMNS)
        for row in rows:
            writer.writerow(row.csv_values())
        if skipped:
            stream.write(f"# skipped: {skipped}\n")

    def max_ratio(self, rows: list[ScanRow]) -> str | None:
        ratios = [row.ratio for row in rows if row.ratio is not None]
        return max(ratios, key=_ratio_value) if ratios else None


scan_services = ScanServices()
