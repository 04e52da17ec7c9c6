"""
Certifying the symmetric procedure at tiny N
============================================

For N <= 12 every symmetric, monotone acceptance curve can be searched with
exact fractions. The symmetric procedure should match the optimum.
"""

from hgci import Design, build_table
from hgci.oracle import compare_to_oracle, exact_alpha, exact_table_coverage, exhaustive_optimal_symmetric

worst = 0
for N in range(1, 13):
    for n in range(N + 1):
        d = Design(N, n, 0.05)
        oracle = exhaustive_optimal_symmetric(d)
        table = build_table("symmetric_opt", d)
        cmp = compare_to_oracle(table, d, oracle)
        assert min(exact_table_coverage(table)) >= 1 - exact_alpha(d.alpha)
        worst = max(worst, cmp.max_excess)
print("largest per-x excess over the exhaustive optimum:", worst)

d = Design(10, 5, 0.05)
oracle = exhaustive_optimal_symmetric(d)
print("optimal total size for N=10, n=5:", oracle.total_size)
for s in oracle.witness.sets:
    print(s.x, (s.lo, s.hi))
