from .grid_builder import (
    AUTO,
    Grid,
    auto_delta,
    build_upper_grid,
    build_lower_grid,
    resolve_scan_grid,
    covering_point,
)
from .theta import ThetaVector, theta_vector, theta_inner, theta_gram, coverage_factor

__all__ = [
    "AUTO",
    "Grid",
    "auto_delta",
    "build_upper_grid",
    "build_lower_grid",
    "resolve_scan_grid",
    "covering_point",
    "ThetaVector",
    "theta_vector",
    "theta_inner",
    "theta_gram",
    "coverage_factor",
]
