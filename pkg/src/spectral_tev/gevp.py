"""Dense generalized eigensolvers with residual-checked contracts.

Both routines delegate to LAPACK through :mod:`scipy.linalg` (Cholesky
reduction plus symmetric QR for definite pencils, QZ for general ones).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from spectral_tev.errors import NoConvergenceError, NotDefiniteError

__all__ = [
    "EigenFlag",
    "PencilResult",
    "SymPencil",
    "relative_residuals",
    "solve_general_pencil",
    "solve_sym_definite",
]

SYMMETRY_RTOL = 1e-10
INFINITE_RTOL = 1e-12


class EigenFlag(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SymPencil:
    """Symmetric ``A`` with symmetric positive definite ``B``."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        B = np.asarray(self.B, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
            raise ValueError(f"incompatible shapes {A.shape} and {B.shape}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if self.asymmetry() > SYMMETRY_RTOL:
            raise ValueError(f"pencil is not symmetric (relative defect {self.asymmetry():.1e})")

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def asymmetry(self) -> float:
        """Largest of ``||M - M^T||_max / ||M||_max`` over ``A`` and ``B``."""
        out = 0.0
        for M in (self.A, self.B):
            scale = np.max(np.abs(M)) or 1.0
            out = max(out, np.max(np.abs(M - M.T)) / scale)
        return float(out)


@dataclass(frozen=True)
class PencilResult:
    """Eigenvalues of a pencil with one flag per eigenvalue.

    ``eigenvalues`` holds every computed value; entries flagged infinite or
    indeterminate are ``inf`` / ``nan``.  ``eigenvectors`` (columns), when
    requested, align with ``eigenvalues``.
    """

    eigenvalues: np.ndarray
    flags: tuple[EigenFlag, ...]
    eigenvectors: np.ndarray | None = None

    @property
    def finite_mask(self) -> np.ndarray:
        return np.array([f is EigenFlag.FINITE for f in self.flags], dtype=bool)

    @property
    def finite(self) -> np.ndarray:
        return self.eigenvalues[self.finite_mask]


def relative_residuals(A, B, values, vectors) -> np.ndarray:
    """``||A x - mu B x|| / ((||A|| + |mu| ||B||) ||x||)`` for each column ``x``."""
    normA = np.linalg.norm(A, 2)
    normB = np.linalg.norm(B, 2)
    values = np.asarray(values)
    R = A @ vectors - (B @ vectors) * values[None, :]
    denom = (normA + np.abs(values) * normB) * np.linalg.norm(vectors, axis=0)
    return np.linalg.norm(R, axis=0) / denom


def solve_sym_definite(p: SymPencil, vectors: bool = False, check: bool = False) -> PencilResult:
    """Solve ``A x = lam B x`` for a symmetric-definite pencil.

    Eigenvalues are real and ascending.  With ``check=True`` the residual bound
    ``1e-9`` is enforced and eigenvectors are computed for the purpose.

    Raises:
        NotDefiniteError: the Cholesky factorization of ``B`` fails.
    """
    want_vectors = vectors or check
    try:
        if want_vectors:
            lam, X = scipy.linalg.eigh(p.A, p.B)
        else:
            lam = scipy.linalg.eigh(p.A, p.B, eigvals_only=True)
            X = None
    except np.linalg.LinAlgError as exc:
        raise NotDefiniteError(str(exc)) from exc
    if check:
        res = relative_residuals(p.A, p.B, lam, X)
        if np.any(res > 1e-9):
            raise NoConvergenceError(f"residual {res.max():.2e} exceeds 1e-9")
    flags = (EigenFlag.FINITE,) * lam.size
    return PencilResult(eigenvalues=lam, flags=flags, eigenvectors=X if vectors else None)


def solve_general_pencil(A, B, vectors: bool = False) -> PencilResult:
    """QZ solve of ``A x = mu B x`` for general real square ``A``, ``B``.

    Pairs ``(alpha, beta)`` with ``|beta| <= 1e-12 ||B||`` are flagged
    infinite, or indeterminate when ``alpha`` is negligible as well.

    Raises:
        NoConvergenceError: LAPACK reports that QZ did not converge.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ValueError(f"incompatible shapes {A.shape} and {B.shape}")
    try:
        out = scipy.linalg.eig(A, B, right=vectors, homogeneous_eigvals=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NoConvergenceError(str(exc)) from exc
    (alpha, beta), X = (out if vectors else (out, None))
    normA = np.linalg.norm(A, 2)
    normB = np.linalg.norm(B, 2)
    flags = []
    mu = np.empty(alpha.size, dtype=complex)
    for i, (a, b) in enumerate(zip(alpha, beta)):
        if abs(b) <= INFINITE_RTOL * normB:
            if abs(a) <= INFINITE_RTOL * normA:
                flags.append(EigenFlag.INDETERMINATE)
                mu[i] = complex(np.nan, np.nan)
            else:
                flags.append(EigenFlag.INFINITE)
                mu[i] = complex(np.inf, 0.0)
        else:
            flags.append(EigenFlag.FINITE)
            mu[i] = a / b
    return PencilResult(eigenvalues=mu, flags=tuple(flags), eigenvectors=X)
