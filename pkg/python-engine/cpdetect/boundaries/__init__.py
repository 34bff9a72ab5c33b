from .detection_boundary import (
    CaseLabel,
    BoundaryValue,
    regime1_case,
    boundary_one_sided,
    boundary_two_sided,
    r2_star,
    boundary_regime2,
    regime2_rate,
    idj_mu_star,
    submatrix_reduction_rho_squared,
)
from .calibration import (
    Regime,
    Calibration,
    Dimensions,
    ReferenceRates,
    calibration_from_dims,
    dims_from_calibration,
    reference_rates,
    interpolate_beta_bar,
)

__all__ = [
    "CaseLabel",
    "BoundaryValue",
    "regime1_case",
    "boundary_one_sided",
    "boundary_two_sided",
    "r2_star",
    "boundary_regime2",
    "regime2_rate",
    "idj_mu_star",
    "submatrix_reduction_rho_squared",
    "Regime",
    "Calibration",
    "Dimensions",
    "ReferenceRates",
    "calibration_from_dims",
    "dims_from_calibration",
    "reference_rates",
    "interpolate_beta_bar",
]
