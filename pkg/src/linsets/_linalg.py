"""Gaussian elimination over a field.

Two flavours: generic matrices of ``Elem`` (any subfield of the ambient
field, rows are python lists), and numpy integer matrices over F_p.
"""

import numpy as np

from .errors import SingularMatrix


def rref(rows, zero, one):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    nrows, ncols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = one / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots


def rank(rows, zero, one):
    return len(rref(rows, zero, one)[1])


def inverse(rows, zero, one):
    n = len(rows)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    R, piv = rref(aug, zero, one)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in R]


def solve(rows, rhs, zero, one):
    """Unique solution of A x = rhs for square invertible A."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref(aug, zero, one)
    if piv != list(range(n)):
        raise SingularMatrix("system is singular")
    return [R[i][n] for i in range(n)]


def matmul(A, B, zero):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), zero) for j in range(len(B[0]))]
            for i in range(len(A))]


# -- numpy over F_p ---------------------------------------------------------

def fp_nullspace(A, p):
    """Basis (rows) of {x : A x = 0 mod p}, deterministic from the RREF."""
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-A[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), ncols)


def fp_span(basis, p):
    """All F_p-combinations of the basis rows (p^k rows, first is zero)."""
    k = basis.shape[0]
    if k == 0:
        return np.zeros((1, basis.shape[1]), dtype=np.int64)
    idx = np.indices((p,) * k).reshape(k, -1).T
    return (idx @ basis) % p
