"""Complete confidence procedures and their audits.

Three constructions are provided:

``lco_style``
    Highest-coverage minimal-span windows for every M; whenever the inverted
    sets have gaps, the windows causing them are replaced by the next-ranked
    candidate until every set is an interval.
``symmetric_opt``
    Windows chosen for M <= N/2 and mirrored to N - M, swept upward so both
    endpoint sequences are nondecreasing. Symmetric and gap-free by
    construction.
``tail_baseline``
    Equal-tail inversion, used as a size yardstick.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from hgci.acceptance import (
    AcceptanceWindow,
    leftmost_window,
    select_window,
)
from hgci.dist import Design, pmf_matrix
from hgci.errors import ConstructionError
from hgci.invert import (
    AcceptanceCurve,
    ConfidenceSet,
    detect_gaps,
    gap_causers,
    invert,
    is_symmetric_pair,
)

METHODS = ("lco_style", "symmetric_opt", "tail_baseline")


class RepairDivergence(ConstructionError):
    """Gap repair hit its replacement cap without producing intervals."""


@dataclass(frozen=True)
class ProcedureTable:
    design: Design
    method: str
    sets: tuple[ConfidenceSet, ...]
    curve: Optional[AcceptanceCurve] = None
    repair_log: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        sets = tuple(self.sets)
        object.__setattr__(self, "sets", sets)
        n = self.design.n
        if [s.x for s in sets] != list(range(n + 1)):
            raise ValueError(f"table needs one set per x = 0..{n}, in order")
        for s in sets:
            if not s.members:
                raise ConstructionError(f"{self.method}: empty confidence set at x={s.x}")
            if not s.is_interval:
                raise ConstructionError(f"{self.method}: gap in confidence set at x={s.x}")

    @property
    def lower(self) -> np.ndarray:
        return np.array([s.lo for s in self.sets])

    @property
    def upper(self) -> np.ndarray:
        return np.array([s.hi for s in self.sets])

    def interval(self, x: int) -> tuple[int, int]:
        s = self.sets[x]
        return s.lo, s.hi


class CoverageSummary(NamedTuple):
    min_coverage: float
    argmin_M: int
    coverage: np.ndarray


class SizeSummary(NamedTuple):
    total_size: int
    mean_length: float


@dataclass(frozen=True)
class AuditReport:
    min_coverage: float
    argmin_M: int
    total_size: int
    mean_length: float
    asymmetry_proportion: float


def lco_table(d: Design) -> ProcedureTable:
    N = d.N
    cap = 10 * (N + 1)
    ranks = [0] * (N + 1)
    windows = [select_window(d, M, 0) for M in range(N + 1)]
    log: list[tuple[int, int]] = []
    while True:
        curve = AcceptanceCurve(d, tuple(windows))
        sets = invert(curve)
        if not detect_gaps(sets):
            break
        for M in gap_causers(sets, curve):
            if len(log) >= cap:
                raise RepairDivergence(
                    f"lco_style: gaps remain after {cap} replacements (last M={M})"
                )
            ranks[M] += 1
            windows[M] = select_window(d, M, ranks[M])
            log.append((M, ranks[M]))
    return ProcedureTable(d, "lco_style", tuple(sets), curve, tuple(log))


def _symmetric_half(d: Design) -> list[AcceptanceWindow]:
    """Windows for M = 0..N//2, swept upward.

    Each M takes the narrowest feasible window that keeps both endpoint
    sequences nondecreasing and leaves no count uncovered; among those the
    leftmost, which leaves the most room for the windows still to come.
    At the centre the window must also mirror cleanly onto the upper half.
    """
    N, n = d.N, d.n
    half: list[AcceptanceWindow] = []
    for M in range(N // 2 + 1):
        bounds = {}
        if half:
            prev = half[-1]
            bounds.update(a_min=prev.a, a_max=prev.b + 1, b_min=prev.b)
        if 2 * M == N:
            bounds["self_symmetric"] = True
        elif 2 * M + 1 == N:
            # Mirror window at M + 1 is [n - b, n - a]: it must not step
            # backwards nor leave a hole above b.
            bounds.update(sum_max=n, b_min=max(bounds.get("b_min", 0), n // 2))
        w = leftmost_window(d, M, **bounds)
        if w is None:
            raise ConstructionError(f"symmetric_opt: no monotone symmetric window for M={M}")
        half.append(w)
    return half


def symmetric_curve(d: Design) -> AcceptanceCurve:
    half = _symmetric_half(d)
    upper = [half[d.N - M].reflect(d) for M in range(len(half), d.N + 1)]
    return AcceptanceCurve(d, tuple(half + upper))


def symmetric_table(d: Design) -> ProcedureTable:
    curve = symmetric_curve(d)
    return ProcedureTable(d, "symmetric_opt", tuple(invert(curve)), curve)


def tail_table(d: Design) -> ProcedureTable:
    p = pmf_matrix(d)
    half_alpha = d.alpha / 2
    at_most = np.cumsum(p, axis=1)  # P(X <= x | M)
    at_least = np.cumsum(p[:, ::-1], axis=1)[:, ::-1]  # P(X >= x | M)
    sets = []
    for x in range(d.n + 1):
        lo = int(np.flatnonzero(at_least[:, x] > half_alpha)[0])
        hi = int(np.flatnonzero(at_most[:, x] > half_alpha)[-1])
        sets.append(ConfidenceSet.interval(x, lo, hi))
    return ProcedureTable(d, "tail_baseline", tuple(sets))


BUILDERS: dict[str, Callable[[Design], ProcedureTable]] = {
    "lco_style": lco_table,
    "symmetric_opt": symmetric_table,
    "tail_baseline": tail_table,
}


def build_table(method: str, d: Design) -> ProcedureTable:
    try:
        builder = BUILDERS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}") from None
    return builder(d)


def membership_matrix(sets: Sequence[ConfidenceSet], N: int) -> np.ndarray:
    """Boolean ``C[x, M]``: is M in the set for x."""
    mask = np.zeros((len(sets), N + 1), dtype=bool)
    for s in sets:
        mask[s.x, list(s.members)] = True
    return mask


def coverage_audit(t: ProcedureTable) -> CoverageSummary:
    """Exact coverage P(M in C(X) | M) for every M and its minimum."""
    p = pmf_matrix(t.design)
    mask = membership_matrix(t.sets, t.design.N)
    coverage = (p * mask.T).sum(axis=1)
    M = int(np.argmin(coverage))
    return CoverageSummary(float(coverage[M]), M, coverage)


def size_audit(t: ProcedureTable) -> SizeSummary:
    total = sum(len(s) for s in t.sets)
    length = sum(s.hi - s.lo for s in t.sets) / len(t.sets)
    return SizeSummary(total, length)


def asymmetric_counts(t: ProcedureTable) -> list[int]:
    """Counts x whose set is not the mirror image of the set at n - x."""
    sets, d = t.sets, t.design
    return [s.x for s in sets if not is_symmetric_pair(s, sets[d.n - s.x], d)]


def asymmetry_audit(t: ProcedureTable) -> float:
    return len(asymmetric_counts(t)) / len(t.sets)


def audit(t: ProcedureTable) -> AuditReport:
    cov = coverage_audit(t)
    size = size_audit(t)
    return AuditReport(
        min_coverage=cov.min_coverage,
        argmin_M=cov.argmin_M,
        total_size=size.total_size,
        mean_length=size.mean_length,
        asymmetry_proportion=asymmetry_audit(t),
    )
