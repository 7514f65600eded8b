"""Integer linear algebra: Smith normal form with unimodular transforms.

Results are numpy ``object`` arrays of Python ints.  The reduction itself runs
on int64 and falls back to Python ints when entries grow.
"""

from dataclasses import dataclass

import numpy as np


def as_int_matrix(M, shape=None):
    """Return ``M`` as a 2-d object array of Python ints."""
    A = np.array(M, dtype=object)
    if A.ndim == 1 and shape is not None:
        A = A.reshape(shape)
    if A.size == 0:
        rows, cols = shape if shape is not None else (A.shape + (0,))[:2]
        return np.zeros((rows, cols), dtype=object)
    A = np.vectorize(int, otypes=[object])(A)
    return A


def identity(n):
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


@dataclass
class SmithForm:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular.

    ``Uinv`` and ``Vinv`` are the exact inverses.  ``diagonal`` lists the
    nonzero invariant factors in divisor-chain order; ``rank`` is its length.
    """

    D: np.ndarray
    U: np.ndarray
    V: np.ndarray
    Uinv: np.ndarray
    Vinv: np.ndarray

    @property
    def diagonal(self):
        n = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(n) if self.D[i, i] != 0]

    @property
    def rank(self):
        return len(self.diagonal)


_SAFE = 2 ** 24


class _Overflow(Exception):
    pass


def smith_normal_form(M, rows=None, cols=None, transforms="U V Uinv Vinv"):
    """Smith normal form of an integer matrix.

    Parameters
    ----------
    M : array-like, (m, n)
        integer matrix; may be empty when ``rows``/``cols`` are given.
    transforms : str
        which of ``U V Uinv Vinv`` to track; the others come back as None.

    Returns
    -------
    SmithForm

    The reduction runs on int64 while entries stay small and restarts on
    Python ints if they grow past a safe bound.
    """
    A = np.array(M, dtype=object)
    if A.size == 0:
        m = rows if rows is not None else (A.shape[0] if A.ndim == 2 else 0)
        n = cols if cols is not None else (A.shape[1] if A.ndim == 2 else 0)
        A = np.zeros((m, n), dtype=object)
    else:
        A = as_int_matrix(A)
    want = set(transforms.split())
    try:
        if A.size and max(abs(x) for x in A.flat) >= _SAFE:
            raise _Overflow
        out = _snf(A.astype(np.int64), np.int64, want)
    except _Overflow:
        out = _snf(A, object, want)
    return SmithForm(*(None if x is None else x.astype(object) for x in out))


def _snf(A, dtype, want):
    A = A.copy()
    m, n = A.shape

    def eye(k, name):
        return np.eye(k, dtype=np.int64).astype(dtype) if name in want else None

    U, Uinv, V, Vinv = eye(m, "U"), eye(m, "Uinv"), eye(n, "V"), eye(n, "Vinv")
    guard = dtype is not object

    def swap_rows(i, j):
        if i != j:
            A[[i, j], :] = A[[j, i], :]
            if U is not None:
                U[[i, j], :] = U[[j, i], :]
            if Uinv is not None:
                Uinv[:, [i, j]] = Uinv[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            if V is not None:
                V[:, [i, j]] = V[:, [j, i]]
            if Vinv is not None:
                Vinv[[i, j], :] = Vinv[[j, i], :]

    for t in range(min(m, n)):
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        vals = np.abs(sub[nz[:, 0], nz[:, 1]])
        i, j = nz[int(np.argmin(vals))]
        swap_rows(t, t + int(i))
        swap_cols(t, t + int(j))
        while True:
            p = A[t, t]
            col = A[t + 1:, t]
            rows_hit = np.flatnonzero(col != 0)
            if len(rows_hit):
                r = t + 1 + rows_hit
                q = col[rows_hit] // p
                A[r, t:] -= np.outer(q, A[t, t:])
                if U is not None:
                    U[r, :] -= np.outer(q, U[t, :])
                if Uinv is not None:
                    Uinv[:, t] += Uinv[:, r].dot(q)
                if guard:
                    _check(A[r, t:], None if U is None else U[r, :], None if Uinv is None else Uinv[:, t])
            row = A[t, t + 1:]
            cols_hit = np.flatnonzero(row != 0)
            if len(cols_hit):
                c = t + 1 + cols_hit
                q = row[cols_hit] // p
                A[t:, c] -= np.outer(A[t:, t], q)
                if V is not None:
                    V[:, c] -= np.outer(V[:, t], q)
                if Vinv is not None:
                    Vinv[t, :] += q.dot(Vinv[c, :])
                if guard:
                    _check(A[t:, c], None if V is None else V[:, c], None if Vinv is None else Vinv[t, :])
            col_nz = np.flatnonzero(A[t + 1:, t] != 0)
            row_nz = np.flatnonzero(A[t, t + 1:] != 0)
            if len(col_nz) or len(row_nz):
                # move the smallest leftover in row/column t onto the pivot
                best, where = None, None
                for i in col_nz:
                    v = abs(A[t + 1 + i, t])
                    if best is None or v < best:
                        best, where = v, ("r", t + 1 + i)
                for j in row_nz:
                    v = abs(A[t, t + 1 + j])
                    if best is None or v < best:
                        best, where = v, ("c", t + 1 + j)
                if where[0] == "r":
                    swap_rows(t, int(where[1]))
                else:
                    swap_cols(t, int(where[1]))
                continue
            # pivot must divide the remaining block
            rest = A[t + 1:, t + 1:]
            bad = np.argwhere(rest % p != 0) if rest.size else []
            if len(bad) == 0:
                break
            r = t + 1 + int(bad[0][0])
            A[t, :] += A[r, :]
            if U is not None:
                U[t, :] += U[r, :]
            if Uinv is not None:
                Uinv[:, r] -= Uinv[:, t]
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            if U is not None:
                U[t, :] = -U[t, :]
            if Uinv is not None:
                Uinv[:, t] = -Uinv[:, t]
    return A, U, V, Uinv, Vinv


def _check(*arrays):
    for X in arrays:
        if X is not None and X.size and np.abs(X).max() >= _SAFE:
            raise _Overflow


def invariant_factors(M, rows=None, cols=None):
    """Nonzero invariant factors of ``M`` (divisor-chain order)."""
    return smith_normal_form(M, rows, cols, transforms="").diagonal


def kernel_basis(M, cols=None):
    """Columns form a Z-basis of ``{x : M x = 0}``."""
    A = np.array(M, dtype=object)
    if A.size == 0:
        n = cols if cols is not None else 0
        return identity(n)
    snf = smith_normal_form(A, transforms="V")
    return snf.V[:, snf.rank:]


def column_lattice_basis(M, rows=None):
    """Columns form a Z-basis of the lattice spanned by the columns of ``M``."""
    A = np.array(M, dtype=object)
    if A.size == 0:
        return np.zeros((rows or 0, 0), dtype=object)
    snf = smith_normal_form(A, transforms="Uinv")
    d = snf.diagonal
    B = snf.Uinv[:, :len(d)].copy()
    for i, di in enumerate(d):
        B[:, i] = B[:, i] * di
    return B


def solve(M, b, cols=None):
    """One integer solution ``x`` of ``M x = b``, or ``None`` if none exists."""
    A = np.array(M, dtype=object)
    b = np.array(b, dtype=object).reshape(-1)
    if A.size == 0:
        n = cols if cols is not None else 0
        if all(v == 0 for v in b):
            return np.zeros(n, dtype=object)
        return None
    snf = smith_normal_form(A, transforms="U V")
    c = snf.U.dot(b)
    d = snf.diagonal
    y = np.zeros(A.shape[1], dtype=object)
    for i, di in enumerate(d):
        if c[i] % di != 0:
            return None
        y[i] = c[i] // di
    if any(v != 0 for v in c[len(d):]):
        return None
    return snf.V.dot(y)
