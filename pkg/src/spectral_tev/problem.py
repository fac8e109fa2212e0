"""Problem data shared by the TE and TM solvers."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as nppoly

from spectral_tev.errors import ContrastViolation

__all__ = ["Contrast", "Mode", "RefractiveIndex", "TransmissionEigenvalue"]

CONTRAST_MARGIN = 1e-8
_SAMPLES = 1000


class Contrast(enum.Enum):
    ABOVE_ONE = "above_one"
    BELOW_ONE = "below_one"


class Mode(enum.Enum):
    TE = "TE"
    TM = "TM"


@dataclass(frozen=True)
class RefractiveIndex:
    """Radial index ``n(r) = sum coeffs[j] r**j`` on ``[0, R]``.

    ``RefractiveIndex([16])`` is a constant medium, ``RefractiveIndex([8, 0, 4])``
    is ``8 + 4 r**2``.
    """

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(v) for v in np.atleast_1d(np.asarray(self.coeffs, dtype=float)))
        if not c:
            raise ValueError("refractive index needs at least one coefficient")
        while len(c) > 1 and c[-1] == 0.0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def constant(cls, n: float) -> "RefractiveIndex":
        return cls((float(n),))

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) == 1

    def __call__(self, r):
        return nppoly.polyval(np.asarray(r, dtype=float), self.coeffs)

    def mapped(self, t, R: float):
        """``n~(t) = n((t + 1) R / 2)``."""
        return self((np.asarray(t, dtype=float) + 1.0) * R / 2.0)

    def classify(self, R: float) -> Contrast:
        """Sign of ``n - 1`` on ``[0, R]``, checked on a 1000-point grid.

        Raises:
            ContrastViolation: ``n - 1`` changes sign or comes within 1e-8 of zero,
                or ``n`` is not positive.
        """
        vals = self(np.linspace(0.0, R, _SAMPLES))
        lo, hi = float(vals.min()), float(vals.max())
        if lo <= 0.0:
            raise ContrastViolation(f"index must be positive on [0, R]; min n = {lo:g}")
        if lo >= 1.0 + CONTRAST_MARGIN:
            return Contrast.ABOVE_ONE
        if hi <= 1.0 - CONTRAST_MARGIN:
            return Contrast.BELOW_ONE
        raise ContrastViolation(
            f"n - 1 must keep one sign away from zero on [0, R]; n ranges over [{lo:g}, {hi:g}]"
        )

    def __str__(self) -> str:
        return ",".join(f"{c:g}" for c in self.coeffs)


@dataclass(frozen=True)
class TransmissionEigenvalue:
    """One real transmission eigenvalue ``k`` of mode ``(mode, l)``.

    ``branch`` is the 1-based index of the TE eigenvalue branch whose fixed
    point produced ``k``; for TM it is the position in the sorted spectrum.
    The 3D eigenvalue repeats once for every ``|m| <= l``.
    """

    k: float
    tau: float
    branch: int
    l: int
    mode: Mode

    @property
    def multiplicity_3d(self) -> int:
        return 2 * self.l + 1
