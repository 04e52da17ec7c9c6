import pytest
from hypothesis import assume, given, settings, strategies as st

from hgci.acceptance import AcceptanceWindow, select_window
from hgci.dist import Design, window_coverage
from hgci.invert import (
    AcceptanceCurve,
    ConfidenceSet,
    InversionError,
    detect_gaps,
    gap_causers,
    invert,
    is_symmetric_pair,
    reflect_set,
)


def window(d, M, a, b):
    return AcceptanceWindow(M, a, b, window_coverage(d, M, a, b))


def full_curve(d):
    return AcceptanceCurve(d, tuple(window(d, M, 0, d.n) for M in range(d.N + 1)))


def dented_curve():
    """Full windows except M = 5, which only accepts 3..5 (coverage exactly 1/2)."""
    d = Design(10, 5, 0.5)
    windows = [window(d, M, 0, d.n) for M in range(11)]
    windows[5] = window(d, 5, 3, 5)
    return d, AcceptanceCurve(d, tuple(windows))


def contiguous(members):
    return not members or members[-1] - members[0] + 1 == len(members)


@st.composite
def monotone_curves(draw):
    N = draw(st.integers(1, 25))
    n = draw(st.integers(1, N))
    # Nondecreasing endpoints from [0, .] at M = 0 up to [., n] at M = N.
    lows = sorted(draw(st.lists(st.integers(0, n), min_size=N + 1, max_size=N + 1)))
    highs = sorted(draw(st.lists(st.integers(0, n), min_size=N + 1, max_size=N + 1)))
    lows[0], highs[-1] = 0, n
    pairs = [(a, max(a, b)) for a, b in zip(lows, highs)]
    for i in range(1, len(pairs)):
        prev_b = pairs[i - 1][1]
        pairs[i] = (min(pairs[i][0], prev_b + 1), max(pairs[i][1], prev_b))
    probe = Design(N, n, 0.5)
    covs = [window_coverage(probe, M, a, b) for M, (a, b) in enumerate(pairs)]
    assume(min(covs) > 0)
    d = Design(N, n, 1 - min(covs) / 2)
    return AcceptanceCurve(d, tuple(AcceptanceWindow(M, a, b, c) for M, ((a, b), c) in enumerate(zip(pairs, covs))))


def test_full_acceptance_inverts_to_everything():
    d = Design(7, 3, 0.05)
    sets = invert(full_curve(d))
    assert [s.members for s in sets] == [tuple(range(8))] * 4
    assert detect_gaps(sets) == []


def test_rank0_curve_boundaries():
    d = Design(10, 5, 0.05)
    curve = AcceptanceCurve(d, tuple(select_window(d, M, 0) for M in range(11)))
    sets = invert(curve)
    assert 0 in sets[0] and 10 not in sets[0]
    for s in sets:
        assert s.members == tuple(M for M in range(11) if s.x in curve.windows[M])


def test_census_inverts_to_singletons():
    d = Design(6, 6, 0.05)
    curve = AcceptanceCurve(d, tuple(select_window(d, M, 0) for M in range(7)))
    assert [s.members for s in invert(curve)] == [(x,) for x in range(7)]


def test_dented_curve_has_gaps_caused_by_the_dent():
    d, curve = dented_curve()
    sets = invert(curve)
    brute = [x for x in range(d.n + 1) if not contiguous([M for M in range(11) if x in curve.windows[M]])]
    assert detect_gaps(sets) == brute == [0, 1, 2]
    assert gap_causers(sets, curve) == [5]


def test_gap_causers_are_interior():
    d, curve = dented_curve()
    sets = invert(curve)
    for x in detect_gaps(sets):
        s = sets[x]
        assert all(s.lo < M < s.hi for M in gap_causers([s], curve))
    assert gap_causers(invert(full_curve(d)), full_curve(d)) == []


def test_empty_set_is_an_error():
    d = Design(4, 4, 0.05)
    # Census design: X == M, so every M owns exactly one count.
    windows = [window(d, M, M, M) for M in range(5)]
    assert len(invert(AcceptanceCurve(d, tuple(windows)))) == 5
    # Coverage is stored, not recomputed, so an infeasible window can be planted.
    windows[2] = AcceptanceWindow(2, 3, 3, 1.0)
    with pytest.raises(InversionError, match="x=2"):
        invert(AcceptanceCurve(d, tuple(windows)))


def test_curve_validation():
    d = Design(4, 2, 0.05)
    with pytest.raises(ValueError):
        AcceptanceCurve(d, (window(d, 0, 0, 2),))
    windows = [window(d, M, 0, 2) for M in range(5)]
    windows[3] = window(d, 3, 0, 0)
    with pytest.raises(ValueError, match="coverage"):
        AcceptanceCurve(d, tuple(windows))


def test_reflect_set_examples():
    d = Design(10, 5, 0.05)
    s = ConfidenceSet.interval(1, 2, 5)
    r = reflect_set(s, d)
    assert (r.x, r.members) == (4, (5, 6, 7, 8))
    assert reflect_set(r, d) == s
    full = ConfidenceSet.interval(2, 0, 10)
    assert reflect_set(full, d) == ConfidenceSet.interval(3, 0, 10)


def test_is_symmetric_pair():
    d = Design(10, 5, 0.05)
    s = ConfidenceSet.interval(1, 2, 5)
    assert is_symmetric_pair(s, reflect_set(s, d), d)
    assert not is_symmetric_pair(s, ConfidenceSet.interval(4, 5, 9), d)
    with pytest.raises(ValueError):
        is_symmetric_pair(s, ConfidenceSet.interval(3, 5, 9), d)


def test_confidence_set_fields():
    s = ConfidenceSet(3, (1, 2, 4))
    assert (s.lo, s.hi, s.is_interval, len(s)) == (1, 4, False, 3)
    assert 4 in s and 3 not in s
    with pytest.raises(ValueError):
        ConfidenceSet(0, (2, 1))


@settings(max_examples=200, deadline=None)
@given(monotone_curves())
def test_monotone_endpoints_never_gap(curve):
    sets = invert(curve)
    assert detect_gaps(sets) == []


@settings(max_examples=100, deadline=None)
@given(monotone_curves())
def test_inversion_is_exact(curve):
    d = curve.design
    sets = invert(curve)
    for M, w in enumerate(curve.windows):
        for x in range(d.n + 1):
            assert (M in sets[x]) == (w.a <= x <= w.b)


@given(st.integers(1, 30), st.data())
def test_reflection_is_involution(N, data):
    n = data.draw(st.integers(0, N))
    d = Design(N, n, 0.05)
    x = data.draw(st.integers(0, n))
    members = sorted(data.draw(st.sets(st.integers(0, N), min_size=1)))
    s = ConfidenceSet(x, tuple(members))
    r = reflect_set(s, d)
    assert len(r) == len(s)
    assert reflect_set(r, d) == s
