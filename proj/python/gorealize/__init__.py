"""Globally optimal least-squares realization of autonomous LTI models.

Polynomials are numpy arrays with the highest power first.
"""

from ._core import (
    BaselineResult,
    CriticalPoint,
    DegenerateError,
    Error,
    FoncResidual,
    InputError,
    NoRealSolutionError,
    RealizationResult,
    SolverError,
    __version__,
    add_noise,
    hankel,
    npf,
    poly_from_roots,
    project_misfit,
    realize,
    simulate,
    toeplitz,
    tsd,
)

__all__ = [
    "BaselineResult",
    "CriticalPoint",
    "DegenerateError",
    "Error",
    "FoncResidual",
    "InputError",
    "NoRealSolutionError",
    "RealizationResult",
    "SolverError",
    "__version__",
    "add_noise",
    "hankel",
    "npf",
    "poly_from_roots",
    "project_misfit",
    "realize",
    "simulate",
    "toeplitz",
    "tsd",
]
