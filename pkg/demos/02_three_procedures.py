"""
Three confidence procedures side by side
========================================

Symmetric size-optimal sets, the minimal-span LCO-style sets, and the
equal-tail baseline for N = 50, n = 25.
"""

from hgci import Design, audit, build_table

d = Design(N=50, n=25, alpha=0.05)

tables = {m: build_table(m, d) for m in ("symmetric_opt", "lco_style", "tail_baseline")}

print(" x  " + "  ".join(f"{m:>15s}" for m in tables))
for x in range(d.n + 1):
    row = "  ".join(f"{str(t.interval(x)):>15s}" for t in tables.values())
    print(f"{x:2d}  {row}")

# Coverage never drops below 95%; the optimised procedures are smaller than the baseline.
for m, t in tables.items():
    r = audit(t)
    print(f"{m:14s} min coverage {r.min_coverage:.4f} at M={r.argmin_M:2d}  "
          f"total size {r.total_size}  asymmetric {100 * r.asymmetry_proportion:.1f}%")
