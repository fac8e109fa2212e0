"""Polynomial bases for the radial TE and TM problems and their node tables.

The radial variable is mapped to ``t in (-1, 1)`` with ``r = (t + 1) R / 2``,
so ``t = -1`` is the centre of the ball and ``t = 1`` its surface.

TE trial space: polynomials of degree <= N with ``u(-1) = u(1) = u'(1) = 0``.
TM trial space: 4-tuples of polynomials of degree <= N tied together by
``h1(1) - h2(1) = h3(1) - h4(1)``.  The four components are ordered
``(V, W, v, w)``: outward and inward harmonic coefficients inside the medium,
then the same pair for the background field.  The coupling constraint is
invariant under swapping the first two and last two slots, so this ordering
spans the same space as ``(W, V, w, v)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Legendre
from numpy.polynomial import legendre as npleg

from spectral_tev.errors import TooSmallError
from spectral_tev.polyquad import (
    QuadratureRule,
    as_legendre,
    deflate_at_minus_one,
    gauss_legendre,
)

__all__ = [
    "TeBasis",
    "TeTables",
    "TmBasis",
    "TmTables",
    "build_te_basis",
    "build_tm_basis",
    "default_rule",
    "tabulate",
]


def default_rule(N: int) -> QuadratureRule:
    """Quadrature used for every assembly at truncation degree ``N``."""
    return gauss_legendre(2 * N + 16)


def _unit(i: int) -> np.ndarray:
    c = np.zeros(i + 1)
    c[i] = 1.0
    return c


@dataclass(frozen=True)
class TeBasis:
    """Basis of the TE space ``X_N``: ``N - 3`` Legendre combinations plus one cubic."""

    N: int
    functions: tuple[Legendre, ...]
    normalizers: np.ndarray

    def __len__(self) -> int:
        return len(self.functions)


@dataclass(frozen=True)
class TmBasis:
    """Scalar functions ``phi_0..phi_N`` and the ``4N + 3`` vector members.

    ``members[k, c]`` is the index of the scalar function in slot ``c`` of
    ``psi_k``, or ``-1`` when the slot is zero.  All nonzero weights are one.
    """

    N: int
    scalars: tuple[Legendre, ...]
    members: np.ndarray

    def __len__(self) -> int:
        return self.members.shape[0]

    def component_matrix(self, slot: int) -> np.ndarray:
        """``(4N+3, N+1)`` 0/1 matrix selecting the scalar in ``slot`` of each member."""
        out = np.zeros((len(self), self.N + 1))
        rows = np.nonzero(self.members[:, slot] >= 0)[0]
        out[rows, self.members[rows, slot]] = 1.0
        return out

    def coupling_defect(self, coeffs: np.ndarray) -> float:
        """``h1(1) - h2(1) - h3(1) + h4(1)`` for the combination ``sum coeffs[k] psi_k``."""
        ends = np.array([f(1.0) for f in self.scalars])
        at_one = [self.component_matrix(c) @ ends for c in range(4)]
        h = [float(np.dot(coeffs, a)) for a in at_one]
        return h[0] - h[1] - h[2] + h[3]


def build_te_basis(N: int) -> TeBasis:
    """TE basis of degree ``N``.

    ``phi_i = d_i (L_i - 2(2i+5)/(2i+7) L_{i+2} + (2i+3)/(2i+7) L_{i+4})`` for
    ``i <= N - 4``, with ``d_i = 1/sqrt(2 (2i+3)^2 (2i+5))``, followed by
    ``phi_{N-3} = (t+1)(t-1)^2 / 4``, which carries the free slope at the centre.
    """
    if N < 5:
        raise TooSmallError(f"TE basis needs N >= 5, got {N}")
    funcs = []
    d = np.empty(N - 3)
    for i in range(N - 3):
        d[i] = 1.0 / np.sqrt(2.0 * (2 * i + 3) ** 2 * (2 * i + 5))
        c = np.zeros(i + 5)
        c[i] = 1.0
        c[i + 2] = -2.0 * (2 * i + 5) / (2 * i + 7)
        c[i + 4] = (2 * i + 3) / (2 * i + 7)
        funcs.append(Legendre(d[i] * c))
    # (t+1)(t-1)^2/4 = (1 - t - t^2 + t^3)/4
    funcs.append(as_legendre(np.polynomial.Polynomial([0.25, -0.25, -0.25, 0.25])))
    d.setflags(write=False)
    return TeBasis(N=N, functions=tuple(funcs), normalizers=d)


def build_tm_basis(N: int) -> TmBasis:
    """TM basis: ``phi_i = L_i - L_{i+2}`` (``i <= N-2``), ``(1-t)/2`` and ``1``."""
    if N < 2:
        raise TooSmallError(f"TM basis needs N >= 2, got {N}")
    scalars = [Legendre(_unit(i)) - Legendre(_unit(i + 2)) for i in range(N - 1)]
    scalars.append(Legendre([0.5, -0.5]))
    scalars.append(Legendre([1.0]))
    members = np.full((4 * N + 3, 4), -1, dtype=int)
    for slot in range(4):
        members[slot * N : (slot + 1) * N, slot] = np.arange(N)
    members[4 * N, [0, 2]] = N
    members[4 * N + 1, [0, 1]] = N
    members[4 * N + 2, [2, 3]] = N
    members.setflags(write=False)
    return TmBasis(N=N, scalars=tuple(scalars), members=members)


def _coef_matrix(polys, degree: int) -> np.ndarray:
    out = np.zeros((len(polys), degree + 1))
    for i, p in enumerate(polys):
        c = np.asarray(p.coef, dtype=float)
        out[i, : c.size] = c
    return out


def _at_nodes(polys, x: np.ndarray) -> np.ndarray:
    """Evaluate a list of Legendre series at ``x``; result is ``(len(x), len(polys))``."""
    degree = max(len(p.coef) for p in polys) - 1
    return npleg.legvander(x, degree) @ _coef_matrix(polys, degree).T


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class TeTables:
    """TE basis data at quadrature nodes; every array is ``(nodes, functions)``.

    ``combo`` holds ``q_i = (1+t) phi_i'' + 2 phi_i' - l(l+1) phi_i/(1+t)``,
    i.e. ``(1+t)`` times the mapped radial operator applied to ``phi_i``.
    """

    l: int
    rule: QuadratureRule
    values: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    deflated: np.ndarray
    combo: np.ndarray
    combo_polys: tuple[Legendre, ...] = field(repr=False)


@dataclass(frozen=True)
class TmTables:
    """TM scalar data at quadrature nodes; arrays are ``(nodes, N+1)``.

    ``cplus = (1+t) phi' + (l+2) phi`` and ``cminus = (1+t) phi' - (l-1) phi``,
    so that ``(1+t)(D+_{l+2} V - D-_{l-1} W) = cplus[V] - cminus[W]``.
    """

    l: int
    rule: QuadratureRule
    values: np.ndarray
    d1: np.ndarray
    cplus: np.ndarray
    cminus: np.ndarray


def _te_combo(phi: Legendre, l: int) -> Legendre:
    one_plus_t = Legendre([1.0, 1.0])
    return as_legendre(
        one_plus_t * phi.deriv(2) + 2.0 * phi.deriv(1) - l * (l + 1) * deflate_at_minus_one(phi)
    )


def tabulate(basis, l: int, rule: QuadratureRule | None = None):
    """Tabulate ``basis`` for mode index ``l`` at the nodes of ``rule``.

    Returns :class:`TeTables` or :class:`TmTables` depending on the basis type.
    Raises :class:`~spectral_tev.errors.NonVanishingError` if a TE member
    violates the pole condition.
    """
    if not isinstance(basis, (TeBasis, TmBasis)):
        raise TypeError(f"unsupported basis type {type(basis).__name__}")
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    if rule is None:
        rule = default_rule(basis.N)
    x = rule.nodes
    if isinstance(basis, TeBasis):
        phis = basis.functions
        combos = tuple(_te_combo(p, l) for p in phis)
        return TeTables(
            l=l,
            rule=rule,
            values=_frozen(_at_nodes(phis, x)),
            d1=_frozen(_at_nodes([p.deriv(1) for p in phis], x)),
            d2=_frozen(_at_nodes([p.deriv(2) for p in phis], x)),
            deflated=_frozen(_at_nodes([deflate_at_minus_one(p) for p in phis], x)),
            combo=_frozen(_at_nodes(combos, x)),
            combo_polys=combos,
        )
    phis = basis.scalars
    one_plus_t = Legendre([1.0, 1.0])
    cplus = [as_legendre(one_plus_t * p.deriv(1) + (l + 2) * p) for p in phis]
    cminus = [as_legendre(one_plus_t * p.deriv(1) - (l - 1) * p) for p in phis]
    return TmTables(
        l=l,
        rule=rule,
        values=_frozen(_at_nodes(phis, x)),
        d1=_frozen(_at_nodes([p.deriv(1) for p in phis], x)),
        cplus=_frozen(_at_nodes(cplus, x)),
        cminus=_frozen(_at_nodes(cminus, x)),
    )
