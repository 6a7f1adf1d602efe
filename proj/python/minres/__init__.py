"""Minimal resistance of convex bodies moving through a medium with thermal motion."""

from ._core import (
    Density,
    DomainError,
    InputError,
    InvariantError,
    NumericError,
    Problem,
    Solution,
    envelope,
    estimate_resistance,
    flux_density,
    h_star_curve,
    limit_coefficients,
    limit_large_v,
    limit_small_v,
    moment,
    region_curves,
    slow_contact_slope,
    solve,
    validate_density,
)

__all__ = [
    "Density",
    "DomainError",
    "InputError",
    "InvariantError",
    "NumericError",
    "Problem",
    "Solution",
    "envelope",
    "estimate_resistance",
    "flux_density",
    "h_star_curve",
    "limit_coefficients",
    "limit_large_v",
    "limit_small_v",
    "moment",
    "region_curves",
    "slow_contact_slope",
    "solve",
    "validate_density",
]
