"""Turn an acceptance curve into confidence sets, and inspect those sets."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from hgci.acceptance import AcceptanceWindow
from hgci.dist import Design
from hgci.errors import ConstructionError


class InversionError(ConstructionError):
    """Raised when the inverted sets are not a valid confidence procedure."""


@dataclass(frozen=True)
class AcceptanceCurve:
    design: Design
    windows: tuple[AcceptanceWindow, ...]

    def __post_init__(self):
        d = self.design
        windows = tuple(self.windows)
        object.__setattr__(self, "windows", windows)
        if len(windows) != d.N + 1:
            raise ValueError(f"curve needs {d.N + 1} windows, got {len(windows)}")
        for M, w in enumerate(windows):
            if w.M != M:
                raise ValueError(f"window at position {M} is for M={w.M}")
            if not 0 <= w.a <= w.b <= d.n:
                raise ValueError(f"window [{w.a}, {w.b}] for M={M} outside 0..{d.n}")
            if w.coverage < d.threshold:
                raise ValueError(f"window for M={M} has coverage {w.coverage} < {d.confidence}")

    @property
    def lower(self) -> np.ndarray:
        return np.array([w.a for w in self.windows])

    @property
    def upper(self) -> np.ndarray:
        return np.array([w.b for w in self.windows])

    def replace(self, window: AcceptanceWindow) -> "AcceptanceCurve":
        windows = list(self.windows)
        windows[window.M] = window
        return AcceptanceCurve(self.design, tuple(windows))


@dataclass(frozen=True)
class ConfidenceSet:
    x: int
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(int(m) for m in self.members)
        if any(b <= a for a, b in zip(members, members[1:])):
            raise ValueError("members must be strictly increasing")
        object.__setattr__(self, "members", members)

    @property
    def lo(self) -> int | None:
        return self.members[0] if self.members else None

    @property
    def hi(self) -> int | None:
        return self.members[-1] if self.members else None

    @property
    def is_interval(self) -> bool:
        return bool(self.members) and self.hi - self.lo + 1 == len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, M) -> bool:
        i = bisect_left(self.members, M)
        return i < len(self.members) and self.members[i] == M

    @classmethod
    def interval(cls, x: int, lo: int, hi: int) -> "ConfidenceSet":
        return cls(x, tuple(range(lo, hi + 1)))


def membership(curve: AcceptanceCurve) -> np.ndarray:
    """Boolean array ``A[x, M]``: is x accepted by the window for M."""
    x = np.arange(curve.design.n + 1)[:, None]
    return (curve.lower[None, :] <= x) & (x <= curve.upper[None, :])


def invert(curve: AcceptanceCurve) -> list[ConfidenceSet]:
    """C(x) = {M : a(M) <= x <= b(M)} for x = 0..n."""
    accepted = membership(curve)
    sets = []
    for x, row in enumerate(accepted):
        members = np.flatnonzero(row)
        if members.size == 0:
            raise InversionError(f"empty confidence set at x={x}")
        sets.append(ConfidenceSet(x, tuple(members.tolist())))
    return sets


def detect_gaps(sets: Sequence[ConfidenceSet]) -> list[int]:
    return [s.x for s in sets if not s.is_interval]


def gap_causers(sets: Sequence[ConfidenceSet], curve: AcceptanceCurve) -> list[int]:
    """Parameter values lying inside a gap, i.e. whose windows exclude that x."""
    causers: set[int] = set()
    for s in sets:
        if s.is_interval:
            continue
        inside = set(s.members)
        for M in range(s.lo + 1, s.hi):
            if M not in inside and s.x not in curve.windows[M]:
                causers.add(M)
    return sorted(causers)


def reflect_set(s: ConfidenceSet, d: Design) -> ConfidenceSet:
    return ConfidenceSet(d.n - s.x, tuple(sorted(d.N - M for M in s.members)))


def is_symmetric_pair(s1: ConfidenceSet, s2: ConfidenceSet, d: Design) -> bool:
    if s1.x + s2.x != d.n:
        raise ValueError(f"sets at x={s1.x} and x={s2.x} are not a mirror pair for n={d.n}")
    return s1.members == reflect_set(s2, d).members
