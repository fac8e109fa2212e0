"""Spherical Bessel functions and the exact TE characteristic function for constant ``n``.

Inside a homogeneous ball the regular radial solutions are ``j_l(sqrt(n) k r)``
(medium) and ``j_l(k r)`` (background).  Matching value and radial derivative
at ``r = R`` gives a 2x2 determinant whose positive roots in ``k`` are the TE
transmission eigenvalues.  This module shares no code with the Galerkin solvers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from spectral_tev.errors import OutOfRangeError

__all__ = ["BesselEval", "oracle_roots", "spherical_bessel", "te_characteristic"]

MAX_ORDER = 10
SCAN_STEP = 1e-3
BISECT_TOL = 1e-13
# below this argument the closed forms lose digits to cancellation
_SMALL_X = 0.5


@dataclass(frozen=True)
class BesselEval:
    """``j_l(x)`` and ``j_l'(x)``; scalars or arrays matching ``x``."""

    l: int
    x: np.ndarray | float
    j: np.ndarray | float
    jp: np.ndarray | float


def _closed_form(l: int, x: np.ndarray) -> np.ndarray:
    s, c = np.sin(x), np.cos(x)
    if l == 0:
        return s / x
    if l == 1:
        return s / x**2 - c / x
    return (3.0 / x**2 - 1.0) * s / x - 3.0 * c / x**2


def _miller(l: int, x: np.ndarray) -> np.ndarray:
    """``j_0 .. j_l`` at each ``x`` (shape ``(l+1, x.size)``) by downward recurrence.

    Normalized with ``sum (2k+1) j_k(x)^2 = 1``, which never vanishes.
    """
    start = l + 20 + int(np.ceil(np.max(x, initial=0.0)))
    out = np.empty((l + 1, x.size))
    upper = np.zeros_like(x)
    cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    for k in range(start, 0, -1):
        norm += (2 * k + 1) * cur**2
        if k <= l:
            out[k] = cur
        lower = (2 * k + 1) / x * cur - upper
        upper, cur = cur, lower
        # rescale to keep the sweep inside floating range
        big = np.abs(cur) > 1e100
        if np.any(big):
            upper[big] *= 1e-100
            cur[big] *= 1e-100
            norm[big] *= 1e-200
            out[:, big] *= 1e-100
    norm += cur**2
    out[0] = cur
    return out / np.sqrt(norm)


def _orders(l: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``(j_{l-1}, j_l)``; ``j_{-1}`` is returned as ``cos(x)/x`` (unused for ``l = 0``)."""
    if l <= 2:
        jl = np.empty_like(x)
        jm = np.empty_like(x)
        small = x < _SMALL_X
        if np.any(~small):
            xs = x[~small]
            jl[~small] = _closed_form(l, xs)
            jm[~small] = _closed_form(l - 1, xs) if l > 0 else np.cos(xs) / xs
        if np.any(small):
            table = _miller(max(l, 1), x[small])
            jl[small] = table[l]
            jm[small] = table[l - 1] if l > 0 else np.cos(x[small]) / x[small]
        return jm, jl
    table = _miller(l, x)
    return table[l - 1], table[l]


def spherical_bessel(l: int, x) -> BesselEval:
    """Spherical Bessel function of the first kind and its derivative.

    Closed forms for ``l <= 2`` (series-free downward recurrence below
    ``x = 0.5`` and for ``l >= 3``).  ``j_l' = j_{l-1} - (l+1) j_l / x`` and
    ``j_0' = -j_1``.

    Raises:
        OutOfRangeError: ``l`` outside ``0..10`` or some ``x <= 0``.
    """
    if not 0 <= l <= MAX_ORDER:
        raise OutOfRangeError(f"order must lie in 0..{MAX_ORDER}, got {l}")
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if np.any(~(xa > 0.0)):
        raise OutOfRangeError("argument must be positive")
    if l == 0:
        _, j = _orders(0, xa)
        _, j1 = _orders(1, xa)
        jp = -j1
    else:
        jm, j = _orders(l, xa)
        jp = jm - (l + 1) * j / xa
    if scalar:
        return BesselEval(l=l, x=float(xa[0]), j=float(j[0]), jp=float(jp[0]))
    shape = np.shape(x)
    return BesselEval(l=l, x=xa.reshape(shape), j=j.reshape(shape), jp=jp.reshape(shape))


def te_characteristic(l: int, n: float, R: float, k):
    """``F(k) = sqrt(n) j_l'(sqrt(n) k R) j_l(k R) - j_l'(k R) j_l(sqrt(n) k R)``.

    The common factor ``k`` of the derivative row is dropped, so ``k = 0`` is
    not a root.
    """
    if not n > 0 or n == 1.0:
        raise ValueError(f"need n > 0 and n != 1, got {n}")
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    sn = math.sqrt(n)
    k = np.asarray(k, dtype=float)
    inner = spherical_bessel(l, sn * k * R)
    outer = spherical_bessel(l, k * R)
    F = sn * np.asarray(inner.jp) * np.asarray(outer.j) - np.asarray(outer.jp) * np.asarray(inner.j)
    return float(F) if F.ndim == 0 else F


def _bisect(f, a: float, b: float, fa: float) -> float:
    while b - a > BISECT_TOL:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm < 0.0) == (fa < 0.0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def oracle_roots(l: int, n: float, R: float, k_max: float) -> list[float]:
    """All roots of :func:`te_characteristic` in ``(0, k_max]``, ascending.

    Sign changes on the grid ``0.001, 0.002, ...`` are bisected to 1e-13.
    """
    if not k_max > 0:
        raise ValueError(f"k_max must be positive, got {k_max}")
    steps = int(np.floor(k_max / SCAN_STEP + 1e-9))
    ks = SCAN_STEP * np.arange(1, steps + 1)
    if ks.size == 0 or ks[-1] < k_max:
        ks = np.append(ks, k_max)
    F = te_characteristic(l, n, R, ks)
    f = lambda k: te_characteristic(l, n, R, k)  # noqa: E731
    roots = [float(k) for k in ks[F == 0.0]]
    for i in np.nonzero(F[:-1] * F[1:] < 0.0)[0]:
        roots.append(_bisect(f, float(ks[i]), float(ks[i + 1]), float(F[i])))
    return sorted(roots)
