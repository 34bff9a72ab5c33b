from .special import (
    std_normal_sf,
    std_normal_log_sf,
    std_normal_quantile_sf,
    bern_kl,
    bern_kl_terms,
    bern_hellinger_sq,
)

__all__ = [
    "std_normal_sf",
    "std_normal_log_sf",
    "std_normal_quantile_sf",
    "bern_kl",
    "bern_kl_terms",
    "bern_hellinger_sq",
]
