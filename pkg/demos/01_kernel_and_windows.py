"""
Hypergeometric probabilities and acceptance windows
===================================================

A population of N = 10 holds M successes; we draw n = 5 without replacement.
"""

from hgci import Design, enumerate_minimal_span_windows, hg_cdf, hg_pmf, minimal_span, window_coverage

d = Design(N=10, n=5, alpha=0.05)

# The pmf for M = 5 is symmetric around 2.5.
print([round(hg_pmf(d, 5, x) * 252) for x in range(6)])   # counts out of C(10, 5) = 252
print(hg_cdf(d, 5, 1), 26 / 252)

# An acceptance window [a, b] must hold at least 95% of the mass.
print(window_coverage(d, 5, 1, 4))   # 250/252

# The narrowest such window for each M, and how many windows reach it.
for M in range(d.N + 1):
    c = enumerate_minimal_span_windows(d, M)
    best = c.windows[0]
    print(f"M={M:2d}  span={minimal_span(d, M)}  best=[{best.a}, {best.b}]  "
          f"coverage={best.coverage:.4f}  candidates={len(c)}")
