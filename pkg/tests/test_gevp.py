import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_tev.errors import NotDefiniteError
from spectral_tev.gevp import (
    EigenFlag,
    SymPencil,
    relative_residuals,
    solve_general_pencil,
    solve_sym_definite,
)


def _spd(rng, n):
    M = rng.standard_normal((n, n))
    return M @ M.T + n * np.eye(n)


def _sym(rng, n):
    M = rng.standard_normal((n, n))
    return M + M.T


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 30), st.integers(0, 2**32 - 1))
def test_sym_definite_matches_reduction(n, seed):
    rng = np.random.default_rng(seed)
    A, B = _sym(rng, n), _spd(rng, n)
    res = solve_sym_definite(SymPencil(A, B), vectors=True, check=True)
    L = np.linalg.cholesky(B)
    C = np.linalg.solve(L, np.linalg.solve(L, A).T)
    np.testing.assert_allclose(res.eigenvalues, np.linalg.eigvalsh(C), atol=1e-10 * (1 + np.abs(C).max()))
    assert np.all(np.diff(res.eigenvalues) >= 0)
    assert np.all(relative_residuals(A, B, res.eigenvalues, res.eigenvectors) < 1e-12)
    assert all(f is EigenFlag.FINITE for f in res.flags)


def test_sym_definite_not_definite():
    A = np.eye(3)
    B = np.diag([1.0, -1.0, 2.0])
    with pytest.raises(NotDefiniteError):
        solve_sym_definite(SymPencil(A, B))


def test_sym_pencil_validation():
    with pytest.raises(ValueError):
        SymPencil(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        SymPencil(np.array([[1.0, 2.0], [0.0, 1.0]]), np.eye(2))
    p = SymPencil(np.eye(2), np.eye(2))
    assert p.n == 2
    assert p.asymmetry() == 0.0


def test_general_pencil_flags_infinite():
    A = np.diag([1.0, 2.0, 3.0])
    B = np.diag([1.0, 1.0, 0.0])
    res = solve_general_pencil(A, B)
    assert sorted(res.finite.real) == pytest.approx([1.0, 2.0])
    assert res.flags.count(EigenFlag.INFINITE) == 1
    assert np.isinf(res.eigenvalues[~res.finite_mask]).all()


def test_general_pencil_flags_indeterminate():
    A = np.diag([1.0, 0.0])
    B = np.diag([2.0, 0.0])
    res = solve_general_pencil(A, B)
    assert EigenFlag.INDETERMINATE in res.flags
    assert res.finite == pytest.approx([0.5])


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 25), st.integers(0, 2**32 - 1))
def test_general_pencil_matches_scipy(n, seed):
    rng = np.random.default_rng(seed)
    A, B = rng.standard_normal((n, n)), rng.standard_normal((n, n)) + n * np.eye(n)
    res = solve_general_pencil(A, B, vectors=True)
    ref = scipy.linalg.eigvals(A, B)
    np.testing.assert_allclose(np.sort_complex(res.finite), np.sort_complex(ref), atol=1e-9)
    r = relative_residuals(A, B, res.eigenvalues, res.eigenvectors)
    assert np.all(r < 1e-12)


def test_general_pencil_shape_check():
    with pytest.raises(ValueError):
        solve_general_pencil(np.eye(2), np.eye(3))
