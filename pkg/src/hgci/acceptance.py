"""Minimal-span acceptance windows for a single parameter value M.

A window ``[a, b]`` accepts the sample counts ``a..b``; it is feasible for M
when ``P(a <= X <= b | M) >= 1 - alpha`` (up to ``COVERAGE_SLACK``).
Candidate windows are ranked by coverage, highest first, with ties broken
by the smaller lower end.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from hgci.dist import Design, cumulative_row
from hgci.errors import ConstructionError

# Coverages closer than this are treated as equal when ranking. Mirror-image
# windows have identical exact coverage but their float sums differ in the
# last few bits.
RANK_TIE_TOL = 1e-10


class UnresolvableConfiguration(ConstructionError):
    """No further candidate window exists for some M."""

    def __init__(self, M: int, message: str):
        super().__init__(message)
        self.M = M


@dataclass(frozen=True)
class AcceptanceWindow:
    M: int
    a: int
    b: int
    coverage: float

    @property
    def span(self) -> int:
        return self.b - self.a

    def __contains__(self, x) -> bool:
        return self.a <= x <= self.b

    def reflect(self, d: Design) -> "AcceptanceWindow":
        """The same window seen with success and failure swapped."""
        return AcceptanceWindow(d.N - self.M, d.n - self.b, d.n - self.a, self.coverage)


@dataclass(frozen=True)
class CandidateList:
    M: int
    span: int
    windows: tuple[AcceptanceWindow, ...]

    def __len__(self):
        return len(self.windows)

    def __getitem__(self, i):
        return self.windows[i]


def _span_coverages(d: Design, M: int, s: int) -> np.ndarray:
    """Coverage of ``[a, a+s]`` for a = 0..n-s."""
    cum = cumulative_row(d, M)
    return cum[s + 1 :] - cum[: d.n + 1 - s]


def _rank_order(cov: np.ndarray, starts: np.ndarray) -> list[int]:
    """Indices sorted by coverage descending, near-ties by smaller start."""
    order = sorted(range(len(cov)), key=lambda i: (-cov[i], starts[i]))
    ranked: list[int] = []
    group: list[int] = []
    for i in order:
        if group and cov[group[0]] - cov[i] > RANK_TIE_TOL:
            ranked.extend(sorted(group, key=lambda j: starts[j]))
            group = []
        group.append(i)
    ranked.extend(sorted(group, key=lambda j: starts[j]))
    return ranked


def minimal_span(d: Design, M: int) -> int:
    """Smallest s such that some window of width s is feasible for M."""
    M = d.check_M(M)
    return _minimal_span(d, M)


@lru_cache(maxsize=1 << 16)
def _minimal_span(d: Design, M: int) -> int:
    thr = d.threshold
    lo, hi = 0, d.n
    # Feasibility is monotone in s because the prefix sums are nondecreasing.
    while lo < hi:
        mid = (lo + hi) // 2
        if _span_coverages(d, M, mid).max() >= thr:
            hi = mid
        else:
            lo = mid + 1
    return lo


@lru_cache(maxsize=1 << 16)
def _ranked_at_span(d: Design, M: int, s: int) -> tuple[AcceptanceWindow, ...]:
    cov = _span_coverages(d, M, s)
    starts = np.flatnonzero(cov >= d.threshold)
    cov = cov[starts]
    return tuple(
        AcceptanceWindow(M, int(starts[i]), int(starts[i]) + s, float(cov[i]))
        for i in _rank_order(cov, starts)
    )


def best_window(d: Design, M: int) -> AcceptanceWindow:
    """Rank-0 candidate for M without materialising the full ranking."""
    M = d.check_M(M)
    s = _minimal_span(d, M)
    cov = _span_coverages(d, M, s)
    top = cov.max()
    a = int(np.flatnonzero(cov >= top - RANK_TIE_TOL)[0])
    return AcceptanceWindow(M, a, a + s, float(cov[a]))


def enumerate_minimal_span_windows(d: Design, M: int) -> CandidateList:
    """All feasible windows of minimal span for M, best first."""
    M = d.check_M(M)
    s = _minimal_span(d, M)
    return CandidateList(M, s, _ranked_at_span(d, M, s))


def iter_candidates(d: Design, M: int) -> Iterator[AcceptanceWindow]:
    """Feasible windows in selection order: by span, then by rank."""
    M = d.check_M(M)
    for s in range(_minimal_span(d, M), d.n + 1):
        yield from _ranked_at_span(d, M, s)


def select_window(d: Design, M: int, rank: int) -> AcceptanceWindow:
    """The ``rank``-th candidate for M, widening the span once a span's list runs out."""
    if rank < 0:
        raise ValueError(f"rank must be >= 0, got {rank}")
    M = d.check_M(M)
    left = rank
    for s in range(_minimal_span(d, M), d.n + 1):
        ranked = _ranked_at_span(d, M, s)
        if left < len(ranked):
            return ranked[left]
        left -= len(ranked)
    raise UnresolvableConfiguration(
        M, f"candidate windows exhausted for M={M} at rank {rank} (span {d.n} reached)"
    )


def leftmost_window(
    d: Design,
    M: int,
    a_min: int = 0,
    a_max: int | None = None,
    b_min: int = 0,
    b_max: int | None = None,
    sum_max: int | None = None,
    self_symmetric: bool = False,
) -> AcceptanceWindow | None:
    """Narrowest feasible window for M within the given bounds, leftmost first.

    Bounds are ``a_min <= a <= a_max``, ``b_min <= b <= b_max`` and
    ``a + b <= sum_max``; ``self_symmetric`` demands ``a + b == n``.
    Returns None when no feasible window satisfies them.
    """
    M = d.check_M(M)
    n = d.n
    a_max = n if a_max is None else a_max
    b_max = n if b_max is None else b_max
    sum_max = 2 * n if sum_max is None else sum_max
    thr = d.threshold
    for s in range(_minimal_span(d, M), n + 1):
        lo = max(a_min, b_min - s, 0)
        hi = min(a_max, b_max - s, n - s, (sum_max - s) // 2)
        if self_symmetric:
            if (n - s) % 2 or not lo <= (n - s) // 2 <= hi:
                continue
            lo = hi = (n - s) // 2
        if lo > hi:
            continue
        ok = np.flatnonzero(_span_coverages(d, M, s)[lo : hi + 1] >= thr)
        if ok.size:
            a = lo + int(ok[0])
            return AcceptanceWindow(M, a, a + s, float(_span_coverages(d, M, s)[a]))
    return None


def symmetric_window_pair(
    d: Design, M: int, rank: int = 0
) -> tuple[AcceptanceWindow, AcceptanceWindow]:
    """Window for M (2M <= N) and its mirror image for N - M.

    At M = N/2 both entries are the same self-symmetric window (b = n - a),
    widening the span until such a window is feasible.
    """
    M = d.check_M(M)
    if 2 * M > d.N:
        raise ValueError(f"symmetric_window_pair needs 2M <= N, got M={M}, N={d.N}")
    if 2 * M == d.N:
        centred = (w for w in iter_candidates(d, M) if w.a + w.b == d.n)
        for i, w in enumerate(centred):
            if i == rank:
                return w, w
        raise UnresolvableConfiguration(M, f"no self-symmetric window of rank {rank} for M={M}")
    w = best_window(d, M) if rank == 0 else select_window(d, M, rank)
    return w, w.reflect(d)


def clear_caches() -> None:
    """Drop memoised spans and rankings (used to time constructions cold)."""
    _minimal_span.cache_clear()
    _ranked_at_span.cache_clear()
