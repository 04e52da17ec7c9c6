"""Construction-time benchmark over a grid of designs."""

from __future__ import annotations

import csv
import io
import logging
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Sequence

from hgci import acceptance, dist
from hgci.dist import Design
from hgci.errors import ConstructionError
from hgci.procedures import audit, build_table

log = logging.getLogger(__name__)

DEFAULT_NS = (200, 400, 600, 800, 1000)
# lco_style cells at or above this N (with n = N/2) need allow_long_runs.
LONG_RUN_N = 600


@dataclass(frozen=True)
class BenchRecord:
    method: str
    N: int
    n: int
    alpha: float
    wall_time_seconds: float
    total_size: int | float
    min_coverage: float
    asymmetry_proportion: float


HEADER = tuple(f.name for f in fields(BenchRecord))


def sample_size(N: int, rule: str) -> int:
    if rule == "half":
        return N // 2
    if rule == "quarter":
        return math.ceil(N / 4)
    raise ValueError(f"unknown n rule {rule!r} (expected 'half' or 'quarter')")


def is_long_run(method: str, d: Design) -> bool:
    return method == "lco_style" and d.N >= LONG_RUN_N and 2 * d.n >= d.N


def time_construction(method: str, d: Design, repeats: int = 3) -> BenchRecord:
    """Median cold construction time; audits come from the last table built."""
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    times = []
    for _ in range(repeats):
        dist.clear_caches()
        acceptance.clear_caches()
        start = time.perf_counter()
        table = build_table(method, d)
        times.append(time.perf_counter() - start)
    report = audit(table)
    return BenchRecord(
        method, d.N, d.n, d.alpha, statistics.median(times),
        report.total_size, report.min_coverage, report.asymmetry_proportion,
    )


def _run_cell(cell: tuple[str, Design, int]) -> BenchRecord:
    method, d, repeats = cell
    try:
        return time_construction(method, d, repeats)
    except ConstructionError as exc:
        log.error("%s failed for %s: %s", method, d, exc)
        nan = math.nan
        return BenchRecord(method, d.N, d.n, d.alpha, nan, nan, nan, nan)


def run_bench(
    methods: Sequence[str],
    designs: Iterable[Design],
    repeats: int = 3,
    allow_long_runs: bool = False,
    parallel_cells: bool = False,
) -> list[BenchRecord]:
    cells = []
    for d in designs:
        for method in methods:
            if is_long_run(method, d) and not allow_long_runs:
                log.warning("skipping %s at N=%d, n=%d (needs allow_long_runs)", method, d.N, d.n)
                continue
            cells.append((method, d, repeats))
    if parallel_cells:
        with ProcessPoolExecutor() as pool:
            return list(pool.map(_run_cell, cells))
    return [_run_cell(c) for c in cells]


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for r in records:
        writer.writerow(repr(v) if isinstance(v, float) else v for v in astuple(r))
    return buf.getvalue()
