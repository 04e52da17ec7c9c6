"""
How long does construction take?
================================

Cold construction times (median of three) for n = N/2, written as CSV that
any plotting tool can read. LCO-style cells at N >= 600 are skipped unless
``allow_long_runs=True``.
"""

import sys

from hgci.bench import records_to_csv, run_bench
from hgci.dist import Design

designs = [Design(N, N // 2, 0.05) for N in (200, 400, 600, 800, 1000)]
records = run_bench(["lco_style", "symmetric_opt"], designs, repeats=3)
sys.stdout.write(records_to_csv(records))
