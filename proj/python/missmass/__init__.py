"""Confidence bounds for the missing mass of a discrete distribution."""

from ._core import (
    DomainError,
    InputError,
    Interval,
    SampleModel,
    __version__,
    chernoff_tail,
    compare,
    domain,
    exact_surrogate_tail,
    families,
    log_mgf,
    run_birthday,
    run_fourpoint,
    run_table1,
    simulate_missing_mass,
)

__all__ = [
    "DomainError",
    "InputError",
    "Interval",
    "SampleModel",
    "__version__",
    "chernoff_tail",
    "compare",
    "domain",
    "exact_surrogate_tail",
    "families",
    "log_mgf",
    "run_birthday",
    "run_fourpoint",
    "run_table1",
    "simulate_missing_mass",
]
