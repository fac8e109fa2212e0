import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_tev.errors import ContrastViolation
from spectral_tev.problem import Contrast, Mode, RefractiveIndex, TransmissionEigenvalue


def test_constant_and_polynomial():
    n = RefractiveIndex([8, 0, 4])
    assert n(0.5) == pytest.approx(9.0)
    assert not n.is_constant
    assert RefractiveIndex.constant(16).is_constant
    assert str(n) == "8,0,4"


def test_trailing_zeros_trimmed():
    assert RefractiveIndex([16, 0, 0]).coeffs == (16.0,)
    assert RefractiveIndex([16, 0, 0]) == RefractiveIndex([16])


def test_mapped_index():
    n = RefractiveIndex([8, 0, 4])
    t = np.array([-1.0, 0.0, 1.0])
    np.testing.assert_allclose(n.mapped(t, 2.0), [8.0, 12.0, 24.0])


@pytest.mark.parametrize(
    "coeffs, expected",
    [([16], Contrast.ABOVE_ONE), ([0.25], Contrast.BELOW_ONE), ([8, 0, 4], Contrast.ABOVE_ONE), ([0.5, -0.2], Contrast.BELOW_ONE)],
)
def test_classify(coeffs, expected):
    assert RefractiveIndex(coeffs).classify(1.0) is expected


@pytest.mark.parametrize("coeffs", [[1.0], [0.5, 1.0], [1.0 + 1e-9], [-2.0], [2.0, -3.0]])
def test_classify_rejects(coeffs):
    with pytest.raises(ContrastViolation):
        RefractiveIndex(coeffs).classify(1.0)


@given(st.floats(1.001, 100.0))
def test_constant_above_one(n):
    assert RefractiveIndex([n]).classify(3.0) is Contrast.ABOVE_ONE


def test_empty_coefficients():
    with pytest.raises(ValueError):
        RefractiveIndex([])


def test_multiplicity():
    ev = TransmissionEigenvalue(k=1.0, tau=1.0, branch=1, l=3, mode=Mode.TM)
    assert ev.multiplicity_3d == 7
