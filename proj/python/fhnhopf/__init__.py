"""Hopf bifurcation toolkit for the heterogeneous FitzHugh-Nagumo system."""

from ._core import (
    BracketNotFound,
    ConfigError,
    DivergenceError,
    DomainError,
    Error,
    HeterogeneityProfile,
    ModelParams,
    NoSignChange,
    NumericalError,
    SingularSystem,
    f_cubic,
    f_prime,
    find_p0,
    ground_nu,
    lyapunov,
    simulate,
    spectrum,
    stability_sweep,
    stationary_state,
    temporal_eigs,
)

__version__ = "0.1.0"

__all__ = [
    "BracketNotFound",
    "ConfigError",
    "DivergenceError",
    "DomainError",
    "Error",
    "HeterogeneityProfile",
    "ModelParams",
    "NoSignChange",
    "NumericalError",
    "SingularSystem",
    "f_cubic",
    "f_prime",
    "find_p0",
    "ground_nu",
    "lyapunov",
    "simulate",
    "spectrum",
    "stability_sweep",
    "stationary_state",
    "temporal_eigs",
]
