"""Exact confidence sets for the hypergeometric success count."""

from hgci.acceptance import (
    AcceptanceWindow,
    CandidateList,
    enumerate_minimal_span_windows,
    minimal_span,
    select_window,
    symmetric_window_pair,
)
from hgci.dist import Design, hg_cdf, hg_pmf, log_choose, window_coverage
from hgci.errors import ConstructionError, OracleBoundError
from hgci.invert import AcceptanceCurve, ConfidenceSet, detect_gaps, gap_causers, invert
from hgci.procedures import (
    METHODS,
    AuditReport,
    ProcedureTable,
    audit,
    build_table,
    lco_table,
    symmetric_table,
    tail_table,
)

__all__ = [
    "AcceptanceCurve", "AcceptanceWindow", "AuditReport", "CandidateList",
    "ConfidenceSet", "ConstructionError", "Design", "METHODS", "OracleBoundError",
    "ProcedureTable", "audit", "build_table", "detect_gaps",
    "enumerate_minimal_span_windows", "gap_causers", "hg_cdf", "hg_pmf", "invert",
    "lco_table", "log_choose", "minimal_span", "select_window", "symmetric_table",
    "symmetric_window_pair", "tail_table", "window_coverage",
]
