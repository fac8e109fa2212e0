"""Spectral-Galerkin computation of Maxwell transmission eigenvalues of a ball.

The radially stratified problem splits into one-dimensional TE and TM
problems per mode index ``l``.  TE eigenvalues are fixed points of a
parameterized symmetric-definite pencil, TM eigenvalues come from one
indefinite linear pencil in ``k**2``.
"""

from spectral_tev.errors import (
    ContrastViolation,
    NoConvergenceError,
    NonVanishingError,
    NotDefiniteError,
    OutOfRangeError,
    TevError,
    TooSmallError,
)
from spectral_tev.oracle import oracle_roots, spherical_bessel, te_characteristic
from spectral_tev.problem import Contrast, Mode, RefractiveIndex, TransmissionEigenvalue
from spectral_tev.te_solver import TeProblem, assemble_te, find_te_eigenvalues, lambda_branches
from spectral_tev.tm_solver import TmProblem, assemble_tm, solve_tm

__all__ = [
    "Contrast",
    "ContrastViolation",
    "Mode",
    "NoConvergenceError",
    "NonVanishingError",
    "NotDefiniteError",
    "OutOfRangeError",
    "RefractiveIndex",
    "TeProblem",
    "TevError",
    "TmProblem",
    "TooSmallError",
    "TransmissionEigenvalue",
    "assemble_te",
    "assemble_tm",
    "find_te_eigenvalues",
    "lambda_branches",
    "oracle_roots",
    "solve_tm",
    "spherical_bessel",
    "te_characteristic",
]
