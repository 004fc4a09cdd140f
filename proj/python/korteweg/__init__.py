"""Resolvent solver for the linearized Korteweg system."""

from ._core import (
    DerivedConstants,
    KortewegError,
    MaterialParams,
    contraction_probe,
    derive_constants,
    frak_l,
    kernel_M,
    lopatinskii_det,
    omega_lambda,
    rbound,
    rescale,
    roots_t,
    scan,
    sector_contains,
    solve_manufactured,
    solve_reduced,
    solve_whole,
    symbol_P,
    validate,
)

__all__ = [
    "DerivedConstants",
    "KortewegError",
    "MaterialParams",
    "contraction_probe",
    "derive_constants",
    "frak_l",
    "kernel_M",
    "lopatinskii_det",
    "omega_lambda",
    "rbound",
    "rescale",
    "roots_t",
    "scan",
    "sector_contains",
    "solve_manufactured",
    "solve_reduced",
    "solve_whole",
    "symbol_P",
    "validate",
]
