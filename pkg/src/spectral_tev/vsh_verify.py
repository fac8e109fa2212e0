"""Vector spherical harmonics of low degree and numerical checks of their identities.

Frame vectors are ``e_r``, ``e_theta = (cos t cos p, cos t sin p, -sin t)`` and
``e_phi = (-sin p, cos p, 0)``.  With ``grad_S Y = Y_theta e_theta +
Y_phi / sin(theta) e_phi``::

    T = grad_S Y x e_r
    V = (l + 1) Y e_r - grad_S Y
    W = l Y e_r + grad_S Y

Fields are stored as ``(..., 3)`` complex arrays of frame components
``(r, theta, phi)``.  Only ``l <= 3`` is supported; the module exists to
validate the radial reduction, not to compute with 3D fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from spectral_tev.errors import OutOfRangeError
from spectral_tev.polyquad import gauss_legendre

__all__ = [
    "Lemma31Report",
    "SphericalPoint",
    "VshValue",
    "check_lemma31",
    "check_lemma32",
    "laplace_beltrami_fd",
    "vsh",
    "ylm",
]

MAX_DEGREE = 3
THETA_NODES = 32
PHI_NODES = 64
FD_STEP = 1e-5

# associated Legendre P_l^m(cos t) (Condon-Shortley phase) and d/dt of it,
# written in x = cos t, s = sin t
_LEGENDRE = {
    (0, 0): (lambda x, s: np.ones_like(x), lambda x, s: np.zeros_like(x)),
    (1, 0): (lambda x, s: x, lambda x, s: -s),
    (1, 1): (lambda x, s: -s, lambda x, s: -x),
    (2, 0): (lambda x, s: 1.5 * x**2 - 0.5, lambda x, s: -3.0 * x * s),
    (2, 1): (lambda x, s: -3.0 * x * s, lambda x, s: 3.0 * (s**2 - x**2)),
    (2, 2): (lambda x, s: 3.0 * s**2, lambda x, s: 6.0 * s * x),
    (3, 0): (lambda x, s: 2.5 * x**3 - 1.5 * x, lambda x, s: -(7.5 * x**2 - 1.5) * s),
    (3, 1): (lambda x, s: -1.5 * (5.0 * x**2 - 1.0) * s, lambda x, s: -1.5 * (5.0 * x**3 - x - 10.0 * x * s**2)),
    (3, 2): (lambda x, s: 15.0 * x * s**2, lambda x, s: 15.0 * (2.0 * x**2 * s - s**3)),
    (3, 3): (lambda x, s: -15.0 * s**3, lambda x, s: -45.0 * s**2 * x),
}

_FAMILIES = ("T", "V", "W")


@dataclass(frozen=True)
class SphericalPoint:
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 < self.theta < math.pi:
            raise OutOfRangeError(f"theta must lie in (0, pi), got {self.theta}")


@dataclass(frozen=True)
class VshValue:
    """``T``, ``V``, ``W`` of degree ``(l, m)`` as frame components ``(..., 3)``."""

    l: int
    m: int
    T: np.ndarray
    V: np.ndarray
    W: np.ndarray


def _check_degree(l: int, m: int) -> None:
    if not 0 <= l <= MAX_DEGREE or abs(m) > l:
        raise OutOfRangeError(f"need 0 <= l <= {MAX_DEGREE} and |m| <= l, got ({l}, {m})")


def ylm(l: int, m: int, theta, phi):
    """Orthonormal ``Y_l^m`` with ``Y_l^{-m} = (-1)^m conj(Y_l^m)``.

    Returns ``(Y, dY/dtheta, (dY/dphi) / sin(theta))``, broadcast over the
    inputs.  Poles must be excluded by the caller.
    """
    _check_degree(l, m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    am = abs(m)
    x, s = np.cos(theta), np.sin(theta)
    P, dP = _LEGENDRE[(l, am)]
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - am) / math.factorial(l + am))
    e = np.exp(1j * am * phi)
    Y = norm * P(x, s) * e
    Yt = norm * dP(x, s) * e
    Yp = 1j * am * Y / s
    if m < 0:
        sign = (-1) ** am
        Y, Yt, Yp = (sign * np.conj(v) for v in (Y, Yt, Yp))
    return Y, Yt, Yp


def vsh(l: int, m: int, theta, phi) -> VshValue:
    """``T``, ``V``, ``W`` at the given angles; ``T`` and ``W`` vanish for ``l = 0``."""
    Y, Yt, Yp = ylm(l, m, theta, phi)
    zero = np.zeros_like(Y)
    T = np.stack([zero, Yp, -Yt], axis=-1)
    V = np.stack([(l + 1) * Y, -Yt, -Yp], axis=-1)
    W = np.stack([l * Y, Yt, Yp], axis=-1)
    return VshValue(l=l, m=m, T=T, V=V, W=W)


def _surface_grid():
    rule = gauss_legendre(THETA_NODES)
    theta = np.arccos(rule.nodes)
    phi = 2.0 * np.pi * np.arange(PHI_NODES) / PHI_NODES
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    w = np.outer(rule.weights, np.full(PHI_NODES, 2.0 * np.pi / PHI_NODES))
    return tt, pp, w


@dataclass(frozen=True)
class Lemma31Report:
    """Pairwise surface integrals against their closed-form values.

    Keys are family pairs such as ``("V", "W")`` plus ``("grad", "grad")`` and
    ``("T", "grad")``.
    """

    degrees: tuple[int, int, int, int]
    integrals: dict
    expected: dict
    max_error: float


def check_lemma31(l: int, m: int, l2: int, m2: int) -> Lemma31Report:
    """All products ``int_S X_l^m . conj(Z_l2^m2) dS`` for ``X, Z in {T, V, W}``.

    Same-family integrals equal ``l(l+1)``, ``(l+1)(2l+1)`` and ``l(2l+1)`` for
    ``T``, ``V``, ``W`` when the degrees coincide; everything else is zero.
    The tensor rule (32 Gauss nodes in ``cos theta``, 64 in ``phi``) is exact here.
    """
    _check_degree(l, m)
    _check_degree(l2, m2)
    tt, pp, w = _surface_grid()
    a = vsh(l, m, tt, pp)
    b = vsh(l2, m2, tt, pp)
    _, at, ap = ylm(l, m, tt, pp)
    _, bt, bp = ylm(l2, m2, tt, pp)
    zero = np.zeros_like(at)
    grad_a = np.stack([zero, at, ap], axis=-1)
    grad_b = np.stack([zero, bt, bp], axis=-1)

    def integrate(f, g):
        return complex(np.sum(w * np.sum(f * np.conj(g), axis=-1)))

    same = (l, m) == (l2, m2)
    diag = {"T": l * (l + 1), "V": (l + 1) * (2 * l + 1), "W": l * (2 * l + 1)}
    integrals, expected = {}, {}
    for x in _FAMILIES:
        for z in _FAMILIES:
            integrals[(x, z)] = integrate(getattr(a, x), getattr(b, z))
            expected[(x, z)] = float(diag[x]) if same and x == z else 0.0
    integrals[("grad", "grad")] = integrate(grad_a, grad_b)
    expected[("grad", "grad")] = float(l * (l + 1)) if same else 0.0
    integrals[("T", "grad")] = integrate(a.T, grad_b)
    expected[("T", "grad")] = 0.0
    err = max(abs(integrals[k] - expected[k]) for k in integrals)
    return Lemma31Report(degrees=(l, m, l2, m2), integrals=integrals, expected=expected, max_error=float(err))


def _frame(theta, phi):
    st, ct, sp, cp = np.sin(theta), np.cos(theta), np.sin(phi), np.cos(phi)
    er = np.stack([st * cp, st * sp, ct], axis=-1)
    et = np.stack([ct * cp, ct * sp, -st], axis=-1)
    ep = np.stack([-sp, cp, np.zeros_like(st)], axis=-1)
    return er, et, ep


def _to_cartesian(F, theta, phi):
    er, et, ep = _frame(theta, phi)
    return F[..., 0:1] * er + F[..., 1:2] * et + F[..., 2:3] * ep


def _spherical(p):
    r = np.linalg.norm(p, axis=-1)
    theta = np.arccos(p[..., 2] / r)
    phi = np.arctan2(p[..., 1], p[..., 0])
    return r, theta, phi


def _field(l, m, family, s):
    """Cartesian components of ``r^s X_l^m`` as a function of Cartesian points."""

    def F(p):
        r, theta, phi = _spherical(p)
        X = getattr(vsh(l, m, theta, phi), family)
        return (r**s)[..., None] * _to_cartesian(X, theta, phi)

    return F


def _curl_fd(F, p, h=FD_STEP):
    d = np.zeros((3,) + p.shape[:-1] + (3,), dtype=complex)
    for a in range(3):
        e = np.zeros(3)
        e[a] = h
        d[a] = (F(p + e) - F(p - e)) / (2.0 * h)
    # d[a][..., b] = dF_b / dx_a
    return np.stack(
        [d[1][..., 2] - d[2][..., 1], d[2][..., 0] - d[0][..., 2], d[0][..., 1] - d[1][..., 0]],
        axis=-1,
    )


def _sample_points(count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.5, 1.5, count)
    theta = np.arccos(rng.uniform(-0.95, 0.95, count))
    phi = rng.uniform(0.0, 2.0 * np.pi, count)
    return np.stack([r * np.sin(theta) * np.cos(phi), r * np.sin(theta) * np.sin(phi), r * np.cos(theta)], axis=-1)


def check_lemma32(l: int, m: int, s: int, points: int = 40, seed: int = 0) -> float:
    """Largest relative error of the radial curl identities for ``f = r^s``.

    With ``d+_a f = f' + a f / r`` and ``d-_a f = f' - a f / r``::

        curl(f V) = (d+_{l+2} f) T
        curl(f W) = -(d-_{l-1} f) T
        (2l+1) curl(f T) = (l+1)(d+_{l+1} f) W - l (d-_l f) V

    Curls are central differences (step 1e-5) in Cartesian coordinates at
    random points with ``0.5 <= r <= 1.5``; errors are measured against the
    largest right-hand side magnitude over all three families.
    """
    if not 1 <= l <= 2:
        raise OutOfRangeError(f"curl identities are checked for 1 <= l <= 2, got {l}")
    if not 1 <= s <= 4:
        raise OutOfRangeError(f"radial exponent must lie in 1..4, got {s}")
    _check_degree(l, m)
    p = _sample_points(points, seed)
    r, theta, phi = _spherical(p)
    X = vsh(l, m, theta, phi)
    cart = lambda F: _to_cartesian(F, theta, phi)  # noqa: E731
    rs1 = (r ** (s - 1))[..., None]
    rhs = {
        "V": (s + l + 2) * rs1 * cart(X.T),
        "W": -(s - l + 1) * rs1 * cart(X.T),
        "T": rs1 * ((l + 1) * (s + l + 1) * cart(X.W) - l * (s - l) * cart(X.V)) / (2 * l + 1),
    }
    # one common scale: curl(r W_2) is identically zero, for instance
    scale = max(float(np.max(np.abs(v))) for v in rhs.values())
    worst = 0.0
    for family, expected in rhs.items():
        got = _curl_fd(_field(l, m, family, s), p)
        worst = max(worst, float(np.max(np.abs(got - expected))) / scale)
    return worst


def laplace_beltrami_fd(l: int, m: int, theta, phi, h: float = 1e-4):
    """Finite-difference surface Laplacian of ``Y_l^m``; should equal ``-l(l+1) Y``."""

    def Y(t, p):
        return ylm(l, m, t, p)[0]

    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    # (1/sin t) d/dt (sin t dY/dt) + (1/sin^2 t) d^2Y/dphi^2
    up = np.sin(theta + h / 2) * (Y(theta + h, phi) - Y(theta, phi)) / h
    down = np.sin(theta - h / 2) * (Y(theta, phi) - Y(theta - h, phi)) / h
    polar = (up - down) / (h * st)
    azim = (Y(theta, phi + h) - 2.0 * Y(theta, phi) + Y(theta, phi - h)) / (h * h * st**2)
    return polar + azim
