import numpy as np
import pytest

from grcat.linalg import (
    column_lattice_basis,
    invariant_factors,
    kernel_basis,
    smith_normal_form,
    solve,
)

from helpers import sympy_invariants


def _int(M):
    return np.array(M, dtype=object)


def check_snf(M, snf):
    M = _int(M)
    assert (snf.U.dot(M).dot(snf.V) == snf.D).all()
    assert (snf.U.dot(snf.Uinv) == np.eye(M.shape[0], dtype=np.int64)).all()
    assert (snf.V.dot(snf.Vinv) == np.eye(M.shape[1], dtype=np.int64)).all()
    D = snf.D.copy()
    diag = [D[i, i] for i in range(min(D.shape))]
    for i in range(min(D.shape)):
        D[i, i] = 0
    assert not D.any(), "off-diagonal entries remain"
    nz = [d for d in diag if d != 0]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    # zeros come last
    assert diag[: len(nz)] == nz


@pytest.mark.parametrize("seed", range(40))
def test_random_matrices_against_sympy(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 8, size=2)
    M = rng.integers(-6, 7, size=(m, n))
    if seed % 3 == 0:
        M[:, 0] = 2 * M[:, -1]  # force a dependency
    snf = smith_normal_form(M)
    check_snf(M, snf)
    assert snf.diagonal == sympy_invariants(M)


def test_large_entries_fall_back_to_python_ints():
    M = [[2 ** 40, 3 * 2 ** 39], [6, 10]]
    snf = smith_normal_form(M)
    check_snf(M, snf)
    assert snf.diagonal == sympy_invariants(M)


def test_growth_during_elimination():
    rng = np.random.default_rng(5)
    M = rng.integers(-3000, 3000, size=(9, 9))
    snf = smith_normal_form(M)
    check_snf(M, snf)
    assert snf.diagonal == sympy_invariants(M)


def test_known_forms():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert invariant_factors([[6]]) == [6]
    assert invariant_factors([], rows=3, cols=0) == []


def test_transforms_are_optional():
    snf = smith_normal_form([[4, 6]], transforms="V")
    assert snf.U is None and snf.Uinv is None and snf.Vinv is None
    assert snf.V is not None


def test_kernel_basis():
    M = [[1, 2, 3], [2, 4, 6]]
    K = kernel_basis(M)
    assert K.shape == (3, 2)
    assert not _int(M).dot(K).any()
    assert kernel_basis([], cols=2).shape == (2, 2)


def test_column_lattice():
    M = [[2, 4], [0, 6]]
    B = column_lattice_basis(M)
    # same lattice: each column of M is an integer combination of B and vice versa
    for col in _int(M).T:
        assert solve(B, col) is not None
    for col in B.T:
        assert solve(M, col) is not None


def test_solve():
    x = solve([[2, 0], [0, 3]], [4, 9])
    assert list(x) == [2, 3]
    assert solve([[2]], [1]) is None
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    assert list(solve([], [0, 0], cols=3)) == [0, 0, 0]
    assert solve([], [1], cols=1) is None
