from .contrast_matrix import (
    Side,
    ObservationMatrix,
    ContrastMatrix,
    contrast_at,
    contrast_matrix,
    mean_contrast,
    pvalues,
)

__all__ = [
    "Side",
    "ObservationMatrix",
    "ContrastMatrix",
    "contrast_at",
    "contrast_matrix",
    "mean_contrast",
    "pvalues",
]
