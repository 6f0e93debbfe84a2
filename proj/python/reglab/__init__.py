from ._core import (
    ConfigError,
    DomainError,
    Error,
    FamilyMismatch,
    Field,
    IndexError,
    SupportError,
    UnsupportedDimension,
    field,
    morrey_subnorm,
    oscillation_scan,
    pointwise_residual,
    power_law_lorentz_norm,
    run_cli,
    sobolev_membership,
    weak_residual,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "FamilyMismatch",
    "Field",
    "IndexError",
    "SupportError",
    "UnsupportedDimension",
    "field",
    "morrey_subnorm",
    "oscillation_scan",
    "pointwise_residual",
    "power_law_lorentz_norm",
    "run_cli",
    "sobolev_membership",
    "weak_residual",
]
