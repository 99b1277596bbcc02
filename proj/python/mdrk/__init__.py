"""Multiderivative Runge-Kutta solvers for 1D hyperbolic conservation laws."""

from ._core import (
    ConfigError,
    FluxModel,
    NumericalFailure,
    StateError,
    Tableau,
    __version__,
    amplification_polynomial,
    convergence_study,
    exact_buckley_leverett,
    exact_dam_break,
    exact_solution,
    legendre,
    legendre_dxi,
    make_model,
    make_tableau,
    max_imaginary_extent,
    problem_names,
    run,
    smoothness_indicators,
    tableau_names,
    weno5_minus,
    weno5_plus,
)

__all__ = [
    "ConfigError",
    "FluxModel",
    "NumericalFailure",
    "StateError",
    "Tableau",
    "__version__",
    "amplification_polynomial",
    "convergence_study",
    "exact_buckley_leverett",
    "exact_dam_break",
    "exact_solution",
    "legendre",
    "legendre_dxi",
    "make_model",
    "make_tableau",
    "max_imaginary_extent",
    "problem_names",
    "run",
    "smoothness_indicators",
    "tableau_names",
    "weno5_minus",
    "weno5_plus",
]
