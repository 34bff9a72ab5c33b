from .berk_jones import BjScanResult, bj_columns, bj_at_column, scan_contrasts, pbj_statistic
from .scan_tests import (
    DEGENERATE_THRESHOLD,
    TestDecision,
    pbj_threshold,
    max_threshold,
    pbj_decision,
    max_decision,
    combined_decision,
    pbj_test,
    max_test,
    combined_test,
)

__all__ = [
    "BjScanResult",
    "bj_columns",
    "bj_at_column",
    "scan_contrasts",
    "pbj_statistic",
    "DEGENERATE_THRESHOLD",
    "TestDecision",
    "pbj_threshold",
    "max_threshold",
    "pbj_decision",
    "max_decision",
    "combined_decision",
    "pbj_test",
    "max_test",
    "combined_test",
]
