"""TM mode: linear pencil in ``k**2`` on the coupled four-field basis.

With ``G = (1+t)(D+_{l+2} V - D-_{l-1} W)`` and ``g`` its background
analogue, the discrete problem reads::

    int G[x] G[h] dt - int g[x] g[h] dt
        = k^2 (2l+1) R^2/4 ( 1/l     int (1+t)^2 (n V h1 - v h3) dt
                           + 1/(l+1) int (1+t)^2 (n W h2 - w h4) dt )

where ``D+-_a = d/dt +- a/(1+t)`` and the weight ``(1+t)^2`` has been split
between the two factors on the left, leaving only polynomial integrands.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from spectral_tev.basis import TmBasis, TmTables, build_tm_basis, tabulate
from spectral_tev.errors import TooSmallError
from spectral_tev.gevp import relative_residuals, solve_general_pencil
from spectral_tev.problem import Contrast, Mode, RefractiveIndex, TransmissionEigenvalue

__all__ = ["TmPencil", "TmProblem", "assemble_tm", "kernel_complement", "refine_eigenpair", "solve_tm", "tm_spectrum"]

logger = logging.getLogger(__name__)

IMAG_RTOL = 1e-8
MIN_MU = 1e-6
DEDUP_TOL = 1e-8
RESIDUAL_RTOL = 1e-8
KERNEL_RTOL = 1e-10
REFINE_STEPS = 2
REFINE_RTOL = 1e-8


@dataclass(frozen=True)
class TmProblem:
    R: float
    l: int
    index: RefractiveIndex
    N: int
    contrast: Contrast = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.l < 1:
            raise ValueError(f"l must be >= 1, got {self.l}")
        if self.N < 2:
            raise TooSmallError(f"TM needs N >= 2, got {self.N}")
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R}")
        object.__setattr__(self, "contrast", self.index.classify(self.R))

    @functools.cached_property
    def basis(self) -> TmBasis:
        return build_tm_basis(self.N)

    @functools.cached_property
    def tables(self) -> TmTables:
        return tabulate(self.basis, self.l)


@dataclass(frozen=True)
class TmPencil:
    """Stiffness ``A`` and mass ``B``, both symmetric of order ``4N + 3``.

    Neither is definite: ``A`` is the difference of the medium and background
    quadratic forms, ``B`` carries ``n`` on the medium block and ``-1`` on the
    background block.
    """

    A: np.ndarray
    B: np.ndarray


def assemble_tm(p: TmProblem) -> TmPencil:
    """Assemble the TM pencil; ``A[i, j]`` pairs trial ``psi_j`` with test ``psi_i``."""
    tab = p.tables
    basis = p.basis
    l = p.l
    x, w = tab.rule.nodes, tab.rule.weights
    S = [basis.component_matrix(c) for c in range(4)]

    # rows: basis members, columns: nodes
    medium = S[0] @ tab.cplus.T - S[1] @ tab.cminus.T
    background = S[2] @ tab.cplus.T - S[3] @ tab.cminus.T
    A = (medium * w) @ medium.T - (background * w) @ background.T

    nt = p.index.mapped(x, p.R)
    w2 = w * (1.0 + x) ** 2
    vals = [Sc @ tab.values.T for Sc in S]
    mass = lambda U, weight: (U * weight) @ U.T  # noqa: E731
    B = (2 * l + 1) * p.R**2 / 4.0 * (
        (mass(vals[0], w2 * nt) - mass(vals[2], w2)) / l
        + (mass(vals[1], w2 * nt) - mass(vals[3], w2)) / (l + 1)
    )
    return TmPencil(A=0.5 * (A + A.T), B=0.5 * (B + B.T))


def kernel_complement(pencil: TmPencil) -> tuple[np.ndarray, int]:
    """Orthonormal basis of ``{x : Z^T B x = 0}`` where ``Z`` spans ``ker A``.

    For ``mu != 0`` every eigenvector satisfies ``Z^T A x = 0 = mu Z^T B x``,
    so restricting the pencil to this subspace drops exactly the ``mu = 0``
    family.  ``Z^T B Z`` is nearly singular (smallest singular value ~1e-10
    at N = 60), which makes that family close to defective and spreads it
    to ``|mu| ~ 1e-5`` if left in place.  Returns the basis and ``dim ker A``.
    """
    evals, U = np.linalg.eigh(pencil.A)
    Z = U[:, np.abs(evals) <= KERNEL_RTOL * np.max(np.abs(evals))]
    if Z.shape[1] == 0:
        return np.eye(pencil.A.shape[0]), 0
    return scipy.linalg.null_space(Z.T @ pencil.B), Z.shape[1]


def tm_spectrum(p: TmProblem, vectors: bool = False, deflate: bool = True):
    """Finite pencil eigenvalues ``mu = k**2`` (complex) before the realness filter.

    With ``deflate=True`` the kernel of ``A`` is removed first (see
    :func:`kernel_complement`); eigenvectors are always returned in the full
    ``4N + 3`` coordinates.
    """
    pencil = assemble_tm(p)
    if deflate:
        Y, dim_kernel = kernel_complement(pencil)
        if dim_kernel != 2 * p.N + 1:
            logger.warning("kernel of A has dimension %d, expected %d", dim_kernel, 2 * p.N + 1)
        res = solve_general_pencil(Y.T @ pencil.A @ Y, Y.T @ pencil.B @ Y, vectors=vectors)
    else:
        Y = None
        res = solve_general_pencil(pencil.A, pencil.B, vectors=vectors)
    mask = res.finite_mask
    vecs = None
    if vectors:
        vecs = res.eigenvectors[:, mask]
        if Y is not None:
            vecs = Y @ vecs
    return pencil, res.eigenvalues[mask], vecs


def refine_eigenpair(pencil: TmPencil, mu: float, x: np.ndarray, steps: int = REFINE_STEPS):
    """Polish a real eigenpair by shifted inverse iteration on the full pencil.

    Each step solves ``(A - mu B) y = B x`` and replaces ``mu`` by the Rayleigh
    quotient ``y^T A y / y^T B y``.  Both matrices are symmetric, so the
    quotient is stationary at real eigenvectors; a QZ estimate already accurate
    to ~1e-13 settles at rounding level after one or two steps.
    """
    A, B = pencil.A, pencil.B
    x = np.real(np.asarray(x))
    x = x / np.linalg.norm(x)
    for _ in range(steps):
        lu = scipy.linalg.lu_factor(A - mu * B, check_finite=False)
        y = scipy.linalg.lu_solve(lu, B @ x, check_finite=False)
        x = y / np.linalg.norm(y)
        mu = float(x @ A @ x) / float(x @ B @ x)
    return mu, x


def solve_tm(
    p: TmProblem,
    k_max: float = np.inf,
    count: int = 4,
    with_residuals: bool = False,
    deflate: bool = True,
    refine: bool = True,
):
    """Real TM transmission eigenvalues ``k <= k_max``, ascending.

    The pencil eigenvalues ``mu`` are kept when finite, real to within
    ``1e-8 (1 + |Re mu|)`` and ``Re mu >= 1e-6``.  The ``2N + 1`` gradient
    modes with ``mu = 0`` are deflated beforehand unless ``deflate=False``;
    complex pairs (genuinely complex transmission eigenvalues) are dropped.
    Survivors are polished by :func:`refine_eigenpair` unless ``refine=False``.
    With ``with_residuals=True`` a second list of relative eigenpair
    residuals, aligned with the result, is returned too.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    pencil, mu, X = tm_spectrum(p, vectors=with_residuals or refine, deflate=deflate)
    keep = (np.abs(mu.imag) <= IMAG_RTOL * (1.0 + np.abs(mu.real))) & (mu.real >= MIN_MU)
    order = np.argsort(mu.real[keep])
    real_mu = mu.real[keep][order]
    if X is not None:
        X = np.real(X[:, keep][:, order])
    if refine:
        # only candidates that can still be reported; duplicates need spares
        for i in range(min(real_mu.size, 2 * count + 4)):
            if real_mu[i] > k_max**2 * (1.0 + 1e-6):
                break
            new_mu, new_x = refine_eigenpair(pencil, real_mu[i], X[:, i])
            if abs(new_mu - real_mu[i]) <= REFINE_RTOL * (1.0 + abs(real_mu[i])):
                real_mu[i], X[:, i] = new_mu, new_x
            else:
                logger.warning("refinement moved mu=%.16g to %.16g; keeping the QZ value", real_mu[i], new_mu)
        resort = np.argsort(real_mu, kind="stable")
        real_mu, X = real_mu[resort], X[:, resort]
    ks = np.sqrt(real_mu)

    picked: list[int] = []
    for i, k in enumerate(ks):
        if k > k_max:
            break
        if picked and k - ks[picked[-1]] <= DEDUP_TOL:
            continue
        picked.append(i)
        if len(picked) == count:
            break

    out = [
        TransmissionEigenvalue(k=float(ks[i]), tau=float(real_mu[i]), branch=j + 1, l=p.l, mode=Mode.TM)
        for j, i in enumerate(picked)
    ]
    if not with_residuals:
        return out
    vecs = X[:, picked]
    res = relative_residuals(pencil.A, pencil.B, real_mu[picked], vecs) if picked else np.zeros(0)
    bad = res > RESIDUAL_RTOL
    if np.any(bad):
        logger.warning("TM eigenpair residuals above %g: %s", RESIDUAL_RTOL, res[bad])
    return out, res
