import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import Legendre, Polynomial

from reference_values import EXACT_TE_ROOTS
from spectral_tev.errors import ContrastViolation, TooSmallError
from spectral_tev.oracle import te_characteristic
from spectral_tev.polyquad import gauss_legendre
from spectral_tev.problem import Contrast, RefractiveIndex
from spectral_tev.te_solver import (
    TeProblem,
    assemble_te,
    find_te_eigenvalues,
    lambda_branches,
)

N16 = RefractiveIndex([16.0])
QUARTER = RefractiveIndex([0.25])
POLY = RefractiveIndex([8.0, 0.0, 4.0])


def _oracle_te_matrices(N, l, n_coeffs, R, tau, q=200):
    """Forms evaluated from their definitions on a q-point rule.

    ``(1+t) L u`` is formed in the monomial basis and divided by ``(1+t)``
    with :class:`numpy.polynomial.Polynomial` long division, so no node values
    are divided by small numbers.  Nodes come from the package rule, which is
    checked against multiprecision values in the quadrature tests; numpy's
    ``leggauss(200)`` has endpoint weights off by ~1e-11 relative, too coarse
    for entries that are small through cancellation.
    """
    rule = gauss_legendre(q)
    x, w = rule.nodes, rule.weights
    funcs = []
    for i in range(N - 3):
        d = 1.0 / np.sqrt(2.0 * (2 * i + 3) ** 2 * (2 * i + 5))
        c = np.zeros(i + 5)
        c[i], c[i + 2], c[i + 4] = 1.0, -2.0 * (2 * i + 5) / (2 * i + 7), (2 * i + 3) / (2 * i + 7)
        funcs.append(Legendre(d * c).convert(kind=Polynomial))
    funcs.append(Polynomial.fromroots([-1.0, 1.0, 1.0]) / 4.0)
    tp = Polynomial([1.0, 1.0])
    combos = []
    for f in funcs:
        # (1+t)^2 L u = (1+t)^2 u'' + 2 (1+t) u' - l(l+1) u vanishes at t = -1
        quo, rem = divmod(tp**2 * f.deriv(2) + 2 * tp * f.deriv() - l * (l + 1) * f, tp)
        assert np.all(np.abs(rem.coef) < 1e-12)
        combos.append(quo)
    q_vals = np.array([c(x) for c in combos])  # (1+t) L u
    u = np.array([f(x) for f in funcs])
    du = np.array([f.deriv()(x) for f in funcs])
    P = (1.0 + x) * u
    nt = np.polynomial.polynomial.polyval((1.0 + x) * R / 2.0, n_coeffs)
    s = R * R * tau / 4.0
    if np.all(nt > 1):
        A = ((q_vals + s * P) * w / (nt - 1)) @ (q_vals + s * P).T + s * s * (P * w) @ P.T
    else:
        A = ((q_vals + s * P) * w * nt / (1 - nt)) @ (q_vals + s * P).T + (q_vals * w) @ q_vals.T
    B = R * R / 4.0 * ((du * w * (1.0 + x) ** 2) @ du.T + l * (l + 1) * (u * w) @ u.T)
    return A, B


def _assert_entrywise(M, ref, rtol):
    scale = np.max(np.abs(ref))
    zero = np.abs(ref) <= 1e-13 * scale  # vanish by orthogonality
    assert np.all(np.abs(M - ref)[zero] <= 1e-13 * scale)
    assert np.all(np.abs(M - ref)[~zero] <= rtol * np.abs(ref)[~zero])


def test_assembly_matches_overresolved_oracle():
    p = TeProblem(1.0, 1, N16, 6)
    pencil = assemble_te(p, 1.0)
    A, B = _oracle_te_matrices(6, 1, [16.0], 1.0, 1.0)
    _assert_entrywise(pencil.A, A, 1e-12)
    _assert_entrywise(pencil.B, B, 1e-12)


def test_assembly_exact_entries():
    # exact rational integration (sympy) of A_tau for n = 16, l = 1, tau = 1, R = 1
    pencil = assemble_te(TeProblem(1.0, 1, N16, 6), 1.0)
    exact = {(1, 3): 0.00068390082105536206182, (2, 3): 0.00082988963256141219795, (0, 2): 0.0091901591349641706248}
    for (i, j), v in exact.items():
        assert abs(pencil.A[i, j] - v) <= 1e-12 * abs(v)


@pytest.mark.parametrize("index", [N16, QUARTER, POLY, RefractiveIndex([0.5, -0.2])])
@pytest.mark.parametrize("l", [1, 3])
def test_assembly_oracle_other_configurations(index, l):
    N, R, tau = 12, 1.3, 2.7
    pencil = assemble_te(TeProblem(R, l, index, N), tau)
    A, B = _oracle_te_matrices(N, l, list(index.coeffs), R, tau)
    np.testing.assert_allclose(pencil.A, A, atol=1e-11 * np.abs(A).max())
    np.testing.assert_allclose(pencil.B, B, atol=1e-12 * np.abs(B).max())


@pytest.mark.parametrize("index", [N16, QUARTER, POLY])
def test_symmetry(index):
    pencil = assemble_te(TeProblem(1.0, 2, index, 30), 3.0)
    assert pencil.asymmetry() <= 1e-11


def test_sparsity_for_constant_index():
    pencil = assemble_te(TeProblem(1.0, 1, N16, 30), 1.0)
    A = pencil.A[:-1, :-1]
    far = np.abs(np.subtract.outer(np.arange(A.shape[0]), np.arange(A.shape[0]))) > 6
    assert np.abs(A[far]).max() <= 1e-13 * np.abs(A).max()


@pytest.mark.parametrize("index", [N16, QUARTER, POLY])
@pytest.mark.parametrize("tau", [0.1, 1.0, 10.0])
def test_coercivity(index, tau):
    pencil = assemble_te(TeProblem(1.0, 1, index, 30), tau)
    assert np.linalg.eigvalsh(pencil.A)[0] > 0
    assert np.all(np.linalg.eigvalsh(pencil.B) > 0)
    np.linalg.cholesky(pencil.B)


@pytest.mark.parametrize("tau", [0.5, 1.0, 5.0])
def test_branches_positive(tau):
    sample = lambda_branches(TeProblem(1.0, 1, N16, 20), tau, M=8)
    assert sample.lambdas.size == 8
    assert np.all(sample.lambdas > 0)
    assert np.all(np.diff(sample.lambdas) >= 0)


@pytest.mark.parametrize("tau", [1.0, 4.0])
def test_minimax_monotone_in_N(tau):
    lams = [lambda_branches(TeProblem(1.0, 1, N16, N), tau, M=3).lambdas for N in (10, 15, 20, 25, 30)]
    for a, b in zip(lams, lams[1:]):
        assert np.all(b - a <= 1e-12)


def test_first_branch_crosses_diagonal_at_table_value():
    p = TeProblem(1.0, 1, N16, 30)
    k = 1.460855902076010
    below = lambda_branches(p, (k - 1e-3) ** 2, M=1).lambdas[0] - (k - 1e-3) ** 2
    above = lambda_branches(p, (k + 1e-3) ** 2, M=1).lambdas[0] - (k + 1e-3) ** 2
    assert below * above < 0


def test_branch_count_validation():
    p = TeProblem(1.0, 1, N16, 10)
    with pytest.raises(ValueError):
        lambda_branches(p, 1.0, M=9)
    with pytest.raises(ValueError):
        assemble_te(p, 0.0)


def test_table_61_row_30():
    evs = find_te_eigenvalues(TeProblem(1.0, 1, N16, 30), 4.5)
    expected = [1.460855902076010, 2.309270674683548, 3.141592653589792, 4.028312376370695]
    assert [e.k for e in evs] == pytest.approx(expected, abs=1e-12)
    assert [e.tau for e in evs] == pytest.approx([k * k for k in expected], abs=1e-11)
    assert all(e.multiplicity_3d == 3 for e in evs)


def test_table_63_first():
    evs = find_te_eigenvalues(TeProblem(1.0, 3, N16, 30), 2.5, count=1)
    assert evs[0].k == pytest.approx(2.061050433015993, abs=1e-12)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_roots_are_determinant_roots(l):
    evs = find_te_eigenvalues(TeProblem(1.0, l, N16, 30), 4.8)
    for e, exact in zip(evs, EXACT_TE_ROOTS[(l, 16.0)]):
        assert e.k == pytest.approx(exact, abs=1e-13)
        # F has slope O(1) here, so a 1e-10 root error means |F| <~ 1e-10
        assert abs(te_characteristic(l, 16.0, 1.0, e.k)) < 1e-10


def test_fixed_point_residual():
    p = TeProblem(1.0, 2, POLY, 25)
    for e in find_te_eigenvalues(p, 5.0):
        lam = lambda_branches(p, e.tau, M=e.branch).lambdas[e.branch - 1]
        assert abs(lam - e.tau) <= 1e-12 * (1 + e.tau)


def test_below_one_branch():
    p = TeProblem(1.0, 1, QUARTER, 30)
    assert p.contrast is Contrast.BELOW_ONE
    assert find_te_eigenvalues(p, 4.8) == []
    evs = find_te_eigenvalues(p, 13.0, count=10)
    assert [e.k for e in evs] == pytest.approx(EXACT_TE_ROOTS[(1, 0.25)], abs=1e-12)


def test_scaling_with_radius():
    # k R is invariant for constant n
    k1 = find_te_eigenvalues(TeProblem(1.0, 1, N16, 25), 2.0, count=1)[0].k
    k2 = find_te_eigenvalues(TeProblem(2.0, 1, N16, 25), 1.0, count=1)[0].k
    assert 2.0 * k2 == pytest.approx(k1, abs=1e-12)


@settings(max_examples=8, deadline=None)
@given(st.floats(2.0, 30.0))
def test_roots_match_determinant_for_random_contrast(n):
    evs = find_te_eigenvalues(TeProblem(1.0, 1, RefractiveIndex([n]), 30), 3.0, count=2)
    for e in evs:
        k = e.k
        h = 1e-7
        # a sign change of F across k confirms a simple root within h
        assert te_characteristic(1, n, 1.0, k - h) * te_characteristic(1, n, 1.0, k + h) <= 0


def test_warning_when_top_branch_is_below_diagonal(caplog):
    with caplog.at_level(logging.WARNING, logger="spectral_tev.te_solver"):
        find_te_eigenvalues(TeProblem(1.0, 1, N16, 10), 6.0, M=2)
    assert "below the diagonal" in caplog.text


def test_invalid_problems():
    with pytest.raises(ValueError):
        TeProblem(1.0, 0, N16, 10)
    with pytest.raises(TooSmallError):
        TeProblem(1.0, 1, N16, 4)
    with pytest.raises(ValueError):
        TeProblem(0.0, 1, N16, 10)
    with pytest.raises(ContrastViolation):
        TeProblem(1.0, 1, RefractiveIndex([0.5, 1.0]), 10)
    p = TeProblem(1.0, 1, N16, 10)
    with pytest.raises(ValueError):
        find_te_eigenvalues(p, 0.0)
    with pytest.raises(ValueError):
        find_te_eigenvalues(p, 2.0, count=0)
