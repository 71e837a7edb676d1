"""Finite-difference Landau-Lifshitz solver (BDF2 projection scheme)."""

from ._core import (
    GridSpec,
    VectorField,
    exact_solution,
    exchange_energy,
    fit_order,
    forcing_term,
    inner,
    laplacian,
    make_grid,
    norm_h1,
    norm_inf,
    norm_l2,
    project,
    restrict_factor3,
    run_mms,
)

__all__ = [
    "GridSpec",
    "VectorField",
    "exact_solution",
    "exchange_energy",
    "fit_order",
    "forcing_term",
    "inner",
    "laplacian",
    "make_grid",
    "norm_h1",
    "norm_inf",
    "norm_l2",
    "project",
    "restrict_factor3",
    "run_mms",
]
