"""Legendre polynomials, Gauss-Legendre quadrature and exact polynomial helpers.

Polynomials are carried as :class:`numpy.polynomial.Legendre` objects on the
default domain ``[-1, 1]``.  The Legendre coefficient vector is the canonical
representation: monomial coefficients of ``L_n`` grow like ``2**n`` and lose
every significant digit by ``n ~ 60``, while Clenshaw evaluation of Legendre
series stays accurate to a few ulps.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Legendre, Polynomial

from spectral_tev.errors import NonVanishingError

__all__ = [
    "QuadratureRule",
    "as_legendre",
    "deflate_at_minus_one",
    "gauss_legendre",
    "legendre_eval",
    "times_one_plus_t",
]

_NEWTON_TOL = 1e-15
_NEWTON_MAXITER = 100


def legendre_eval(i: int, t):
    """Value and first derivative of the Legendre polynomial ``L_i`` at ``t``.

    Uses the three-term recurrence for the values and
    ``L'_{k+1} = L'_{k-1} + (2k+1) L_k`` for the derivatives, so the endpoints
    ``t = +-1`` need no special casing.  ``t`` may be a scalar or an array.
    """
    if i < 0:
        raise ValueError(f"degree must be >= 0, got {i}")
    t = np.asarray(t, dtype=float)
    p_prev, p = np.ones_like(t), t.copy()
    d_prev, d = np.zeros_like(t), np.ones_like(t)
    if i == 0:
        return p_prev, d_prev
    for k in range(1, i):
        p_next = ((2 * k + 1) * t * p - k * p_prev) / (k + 1)
        d_next = d_prev + (2 * k + 1) * p
        p_prev, p = p, p_next
        d_prev, d = d, d_next
    return p, d


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on ``(-1, 1)``, nodes ascending."""

    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return self.nodes.size

    def integrate(self, values) -> np.ndarray:
        """Apply the rule along the first axis of ``values``."""
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


@functools.lru_cache(maxsize=64)
def gauss_legendre(q: int) -> QuadratureRule:
    """Return the ``q``-point Gauss-Legendre rule.

    Nodes come from Newton's method on the Legendre recurrence started at the
    Chebyshev-like guesses ``cos(pi (4j - 1) / (4q + 2))``.  Only the positive
    half is iterated; the other half is mirrored so the rule is exactly
    symmetric.
    """
    if q < 1:
        raise ValueError(f"node count must be >= 1, got {q}")
    half = (q + 1) // 2
    j = np.arange(1, half + 1)
    x = np.cos(np.pi * (4 * j - 1) / (4 * q + 2))
    for _ in range(_NEWTON_MAXITER):
        val, der = legendre_eval(q, x)
        dx = val / der
        x = x - dx
        if np.max(np.abs(dx)) <= _NEWTON_TOL:
            break
    _, der = legendre_eval(q, x)
    w = 2.0 / ((1.0 - x * x) * der * der)
    if q % 2:
        # middle node is exactly zero for odd q
        x[-1] = 0.0
        nodes = np.concatenate([-x, x[-2::-1]])
        weights = np.concatenate([w, w[-2::-1]])
    else:
        nodes = np.concatenate([-x, x[::-1]])
        weights = np.concatenate([w, w[::-1]])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes=nodes, weights=weights)


def as_legendre(p) -> Legendre:
    """Coerce ``p`` to a trimmed :class:`Legendre` series.

    Accepts a ``Legendre``, a monomial ``Polynomial`` (converted once), or a
    sequence taken as ascending Legendre coefficients.
    """
    if isinstance(p, Legendre):
        out = p
    elif isinstance(p, Polynomial):
        out = p.convert(kind=Legendre)
    else:
        out = Legendre(np.asarray(p, dtype=float))
    coef = np.trim_zeros(np.asarray(out.coef, dtype=float), "b")
    return Legendre(coef if coef.size else np.zeros(1))


def times_one_plus_t(p) -> Legendre:
    """Return ``(1 + t) * p`` exactly (up to rounding of the coefficients)."""
    p = as_legendre(p)
    return as_legendre(Legendre(np.polynomial.legendre.legmulx(p.coef)) + p)


def deflate_at_minus_one(p, rtol: float = 1e-12) -> Legendre:
    """Synthetic division of ``p`` by ``(1 + t)``.

    With ``q = sum b_k L_k`` and ``(1 + t) L_k = L_k + ((k+1) L_{k+1} + k L_{k-1})/(2k+1)``
    the coefficients ``b_k`` follow top-down from those of ``p``; the ``L_0``
    equation is left over as the remainder, which equals ``p(-1)`` up to
    rounding.

    Raises:
        NonVanishingError: if ``|p(-1)| > rtol * ||p||`` (coefficient max-norm).
    """
    p = as_legendre(p)
    a = p.coef
    scale = float(np.max(np.abs(a)))
    value_at_minus_one = float(np.sum(a * (-1.0) ** np.arange(a.size)))
    if abs(value_at_minus_one) > rtol * max(scale, np.finfo(float).tiny):
        raise NonVanishingError(f"p(-1) = {value_at_minus_one:.3e} is not zero")
    n = a.size - 1
    if n == 0:
        return Legendre([0.0])
    b = np.zeros(n + 2)
    b[n - 1] = a[n] * (2 * n - 1) / n
    for j in range(n - 1, 0, -1):
        b[j - 1] = (a[j] - b[j] - b[j + 1] * (j + 1) / (2 * j + 3)) * (2 * j - 1) / j
    return as_legendre(b[:n])
