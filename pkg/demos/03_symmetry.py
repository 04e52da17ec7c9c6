"""
Success or failure: does the label matter?
==========================================

Relabelling successes as failures maps an observed count x to n - x and a
parameter M to N - M. A symmetric procedure gives mirror-image answers.
"""

from hgci import Design, build_table
from hgci.invert import reflect_set
from hgci.procedures import asymmetric_counts, asymmetry_audit

for N in (200, 400):
    d = Design(N, N // 2, 0.05)
    lco = build_table("lco_style", d)
    sym = build_table("symmetric_opt", d)
    print(f"N={N}: lco_style {100 * asymmetry_audit(lco):.1f}% asymmetric, "
          f"symmetric_opt {100 * asymmetry_audit(sym):.1f}%")

# One concrete pair. At n = N/2 the distribution of X given M is symmetric
# about M/2, so mirrored windows tie in coverage and the LCO tie rule keeps
# picking the left one.
d = Design(200, 100, 0.05)
lco = build_table("lco_style", d)
x = asymmetric_counts(lco)[0]
print("C(x)            ", lco.interval(x))
mirror = reflect_set(lco.sets[d.n - x], d)
print("mirror of C(n-x)", (mirror.lo, mirror.hi))
