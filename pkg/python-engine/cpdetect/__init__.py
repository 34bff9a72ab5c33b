"""
cpdetect - 고차원 변화점 검출 엔진

Penalized Berk-Jones / max scan tests over geometric changepoint grids,
closed-form detection boundaries, and a Monte Carlo harness for mapping the
detectable/undetectable phase transition.
"""

__version__ = "1.0.0"

SCHEMA_VERSION = 1

__all__ = ["__version__", "SCHEMA_VERSION"]
