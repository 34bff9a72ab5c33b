from .matrix_io import read_matrix_csv, write_matrix_csv
from .report_generator import VOLATILE_KEYS, ReportGenerator, RunClock, run_metadata

__all__ = [
    "read_matrix_csv",
    "write_matrix_csv",
    "VOLATILE_KEYS",
    "ReportGenerator",
    "RunClock",
    "run_metadata",
]
