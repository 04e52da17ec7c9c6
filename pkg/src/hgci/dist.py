"""Hypergeometric kernel: log binomials, pmf, cdf and window coverage.

All probabilities for one design are computed once as an ``(N+1, n+1)``
matrix ``P[M, x]`` in log space and cached; the scalar functions are thin
views over that matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

# Slack used whenever a coverage is compared against 1 - alpha.
COVERAGE_SLACK = 1e-12


@dataclass(frozen=True)
class Design:
    """One inference problem: population size, sample size and error level."""

    N: int
    n: int
    alpha: float
    confidence: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("N", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if not 0 <= self.n <= self.N:
            raise ValueError(f"n must satisfy 0 <= n <= N, got n={self.n}, N={self.N}")
        alpha = float(self.alpha)
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must lie strictly inside (0, 1), got {self.alpha}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "confidence", 1.0 - alpha)

    @property
    def threshold(self) -> float:
        """Smallest coverage accepted as feasible."""
        return self.confidence - COVERAGE_SLACK

    def check_M(self, M: int) -> int:
        if not 0 <= M <= self.N:
            raise ValueError(f"M must lie in 0..{self.N}, got {M}")
        return int(M)


@dataclass(frozen=True)
class Support:
    lo: int
    hi: int

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def support(d: Design, M: int) -> Support:
    M = d.check_M(M)
    return Support(max(0, d.n - (d.N - M)), min(d.n, M))


_LN_SQRT_2PI = 0.5 * math.log(2 * math.pi)
_EXACT_CHOOSE_LIMIT = 1000


def _stirling_remainder(k: int) -> float:
    """log(k!) minus its Stirling approximation, for k >= 1."""
    if k < 16:
        return math.lgamma(k + 1) - (k + 0.5) * math.log(k) + k - _LN_SQRT_2PI
    r = 1.0 / (k * k)
    return (1 / 12 - r * (1 / 360 - r * (1 / 1260 - r * (1 / 1680 - r / 1188)))) / k


def log_choose(m: int, k: int) -> float:
    """Natural log of C(m, k); ``-inf`` when k is outside 0..m.

    Exact integers up to m = 1000; above that a Stirling form whose large
    terms carry no cancellation, so the result stays within a few ulps.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if k < 0 or k > m:
        return -math.inf
    if k == 0 or k == m:
        return 0.0
    if m <= _EXACT_CHOOSE_LIMIT:
        return math.log(math.comb(m, k))
    j = m - k
    return (
        k * math.log1p(j / k)
        + j * math.log1p(k / j)
        + 0.5 * math.log(m / (k * j))
        - _LN_SQRT_2PI
        + _stirling_remainder(m)
        - _stirling_remainder(k)
        - _stirling_remainder(j)
    )


# Designs with more cells than this get rows on demand instead of a full matrix.
_MATRIX_CELLS = 4_000_000


@lru_cache(maxsize=8)
def _log_factorials(N: int) -> np.ndarray:
    return gammaln(np.arange(N + 1, dtype=float) + 1.0)


def _pmf_rows(N: int, n: int, Ms: np.ndarray) -> np.ndarray:
    lf = _log_factorials(N)
    M = Ms[:, None]
    x = np.arange(n + 1)[None, :]
    inside = (x <= M) & (n - x <= N - M)
    # Clip indices so out-of-support cells stay finite, then mask them.
    mx = np.clip(M - x, 0, N)
    rest = np.clip(N - M - n + x, 0, N)
    succ = lf[M] - lf[x] - lf[mx]
    fail = lf[N - M] - lf[n - x] - lf[rest]
    logp = np.where(inside, succ + fail, -np.inf)
    logp -= logp.max(axis=1, keepdims=True)
    p = np.exp(logp)
    p /= p.sum(axis=1, keepdims=True)
    return p


def _cumulate(p: np.ndarray) -> np.ndarray:
    # Leading zero column: cum[..., k] = P(X <= k - 1 | M).
    cum = np.zeros(p.shape[:-1] + (p.shape[-1] + 1,))
    np.cumsum(p, axis=-1, out=cum[..., 1:])
    return cum


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=16)
def _pmf_matrix(N: int, n: int) -> np.ndarray:
    return _frozen(_pmf_rows(N, n, np.arange(N + 1)))


@lru_cache(maxsize=16)
def _cdf_matrix(N: int, n: int) -> np.ndarray:
    return _frozen(_cumulate(_pmf_matrix(N, n)))


@lru_cache(maxsize=256)
def _single_row(N: int, n: int, M: int) -> np.ndarray:
    return _frozen(_pmf_rows(N, n, np.array([M]))[0])


@lru_cache(maxsize=256)
def _single_cum(N: int, n: int, M: int) -> np.ndarray:
    return _frozen(_cumulate(_single_row(N, n, M)))


def _small(d: Design) -> bool:
    return (d.N + 1) * (d.n + 1) <= _MATRIX_CELLS


def pmf_matrix(d: Design) -> np.ndarray:
    """Read-only array ``P`` with ``P[M, x] = P(X = x | M)``."""
    return _pmf_matrix(d.N, d.n)


def pmf_row(d: Design, M: int) -> np.ndarray:
    M = d.check_M(M)
    return _pmf_matrix(d.N, d.n)[M] if _small(d) else _single_row(d.N, d.n, M)


def cumulative_row(d: Design, M: int) -> np.ndarray:
    """Prefix sums of the pmf row, with a leading 0 (length n + 2)."""
    M = d.check_M(M)
    return _cdf_matrix(d.N, d.n)[M] if _small(d) else _single_cum(d.N, d.n, M)


def hg_pmf(d: Design, M: int, x: int) -> float:
    row = pmf_row(d, M)
    if x < 0 or x > d.n:
        return 0.0
    return float(row[x])


def hg_cdf(d: Design, M: int, x: int) -> float:
    """P(X <= x | M), summed over the support."""
    row = pmf_row(d, M)
    if x < 0:
        return 0.0
    if x >= min(d.n, M):
        return 1.0
    return float(row[: x + 1].sum())


def window_coverage(d: Design, M: int, a: int, b: int) -> float:
    """P(a <= X <= b | M); zero for an empty window."""
    row = pmf_row(d, M)
    a, b = max(a, 0), min(b, d.n)
    if a > b:
        return 0.0
    lo, hi = support(d, M).lo, support(d, M).hi
    if a <= lo and b >= hi:
        return 1.0
    return float(row[a : b + 1].sum())


def clear_caches() -> None:
    for cached in (_log_factorials, _pmf_matrix, _cdf_matrix, _single_row, _single_cum):
        cached.cache_clear()
