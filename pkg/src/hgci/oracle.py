"""Exact rational arithmetic cross-checks.

Everything here uses ``fractions.Fraction`` over ``math.comb`` integers and
shares no numerics with :mod:`hgci.dist`. The exhaustive search certifies
the symmetric procedure at tiny N by finding the smallest total size over all
symmetric acceptance curves with nondecreasing endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from hgci.acceptance import AcceptanceWindow
from hgci.dist import Design
from hgci.errors import OracleBoundError
from hgci.invert import AcceptanceCurve, invert
from hgci.procedures import ProcedureTable

COVERAGE_BOUND = 200
SEARCH_BOUND = 12


def exact_alpha(alpha: float) -> Fraction:
    """The decimal value the user typed, e.g. 0.05 -> 1/20."""
    return Fraction(repr(float(alpha)))


def _check_bound(d: Design, bound: int, what: str) -> None:
    if d.N > bound:
        raise OracleBoundError(f"{what} is limited to N <= {bound}, got N={d.N}")


@lru_cache(maxsize=256)
def _exact_rows(N: int, n: int) -> tuple[tuple[Fraction, ...], ...]:
    total = math.comb(N, n)
    return tuple(
        tuple(Fraction(math.comb(M, x) * math.comb(N - M, n - x), total) for x in range(n + 1))
        for M in range(N + 1)
    )


def exact_pmf(d: Design, M: int, x: int) -> Fraction:
    _check_bound(d, COVERAGE_BOUND, "exact_pmf")
    d.check_M(M)
    if not 0 <= x <= d.n:
        return Fraction(0)
    return _exact_rows(d.N, d.n)[M][x]


def exact_window_coverage(d: Design, M: int, a: int, b: int) -> Fraction:
    _check_bound(d, COVERAGE_BOUND, "exact_window_coverage")
    d.check_M(M)
    row = _exact_rows(d.N, d.n)[M]
    return sum(row[max(a, 0) : max(min(b, d.n) + 1, 0)], Fraction(0))


def exact_table_coverage(t: ProcedureTable) -> list[Fraction]:
    """Exact P(M in C(X) | M) for every M of a finished table."""
    d = t.design
    _check_bound(d, COVERAGE_BOUND, "exact_table_coverage")
    rows = _exact_rows(d.N, d.n)
    cover = [Fraction(0)] * (d.N + 1)
    for s in t.sets:
        for M in s.members:
            cover[M] += rows[M][s.x]
    return cover


def _feasible_windows(d: Design, M: int, level: Fraction) -> list[tuple[int, int]]:
    row = _exact_rows(d.N, d.n)[M]
    out = []
    for a in range(d.n + 1):
        mass = Fraction(0)
        for b in range(a, d.n + 1):
            mass += row[b]
            if mass >= level:
                out.append((a, b))
    return out


@dataclass(frozen=True)
class OracleResult:
    total_size: int
    witness: ProcedureTable


def exhaustive_optimal_symmetric(d: Design) -> OracleResult:
    """Minimum of sum_x |C(x)| over symmetric, monotone, feasible curves.

    Curves are fixed by their windows for M = 0..N//2; the rest are mirror
    images. Admissible curves have nondecreasing endpoints, leave no count
    uncovered, and reach coverage >= 1 - alpha exactly at every M. Among
    optimal curves the lexicographically smallest endpoint sequence is
    returned as the witness.
    """
    _check_bound(d, SEARCH_BOUND, "exhaustive_optimal_symmetric")
    N, n = d.N, d.n
    level = 1 - exact_alpha(d.alpha)
    half = N // 2
    options = []
    for M in range(half + 1):
        wins = _feasible_windows(d, M, level)
        if 2 * M == N:
            wins = [w for w in wins if w[0] + w[1] == n]
        elif 2 * M + 1 == N:
            wins = [w for w in wins if w[0] + w[1] <= n and n - w[1] <= w[1] + 1]
        options.append(sorted(wins))
    # A window for M < N/2 is counted twice (itself and its mirror).
    weight = [1 if 2 * M == N else 2 for M in range(half + 1)]
    floor = [min(b - a + 1 for a, b in opts) * w for opts, w in zip(options, weight)]
    rest = [sum(floor[M:]) for M in range(half + 2)] + [0]

    best_cost = math.inf
    best: list[tuple[int, int]] | None = None
    chosen: list[tuple[int, int]] = []

    def search(M: int, cost: int) -> None:
        nonlocal best_cost, best
        if cost + rest[M] >= best_cost:
            return
        if M > half:
            best_cost, best = cost, list(chosen)
            return
        prev = chosen[-1] if chosen else None
        for a, b in options[M]:
            if prev is not None and not (prev[0] <= a <= prev[1] + 1 and b >= prev[1]):
                continue
            chosen.append((a, b))
            search(M + 1, cost + weight[M] * (b - a + 1))
            chosen.pop()

    search(0, 0)
    if best is None:
        raise AssertionError(f"no admissible symmetric curve for {d}")
    windows = [
        AcceptanceWindow(M, a, b, float(exact_window_coverage(d, M, a, b)))
        for M, (a, b) in enumerate(best)
    ]
    windows += [windows[N - M].reflect(d) for M in range(half + 1, N + 1)]
    curve = AcceptanceCurve(d, tuple(windows))
    witness = ProcedureTable(d, "oracle_symmetric", tuple(invert(curve)), curve)
    return OracleResult(int(best_cost), witness)


@dataclass(frozen=True)
class OracleComparison:
    excess: tuple[int, ...]
    max_excess: int
    total_excess: int


def compare_to_oracle(t: ProcedureTable, d: Design, oracle: OracleResult | None = None) -> OracleComparison:
    """Per-x size excess of ``t`` over the exhaustive optimum."""
    if t.design != d:
        raise ValueError(f"table was built for {t.design}, not {d}")
    oracle = oracle or exhaustive_optimal_symmetric(d)
    excess = tuple(len(s) - len(o) for s, o in zip(t.sets, oracle.witness.sets))
    return OracleComparison(excess, max(excess), sum(excess))
