"""Dense exact linear algebra over GF(q) on int64 numpy matrices.

Pivot rule everywhere: the first row (smallest index) with a nonzero
entry in the leftmost unresolved column, so outputs are deterministic.
"""

from __future__ import annotations

import numpy as np

from .gf import GF


def as_matrix(M, field: GF) -> np.ndarray:
    """Validate and copy a matrix of canonical field elements."""
    A = np.array(M, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    if A.size and (A.min() < 0 or A.max() >= field.q):
        raise ValueError(f"entries must lie in [0, {field.q})")
    return A


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(M: np.ndarray, field: GF) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and ordered pivot columns."""
    R = np.array(M, dtype=np.int64)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        inv = field.inv(int(R[r, c]))
        if inv != 1:
            R[r] = field.mul(R[r], inv)
        for i in range(rows):
            if i != r and R[i, c] != 0:
                R[i] = field.sub(R[i], field.mul(R[r], int(R[i, c])))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: np.ndarray, field: GF) -> int:
    """Rank over GF(q)."""
    return len(rref(M, field)[1])


def null_space_basis(M: np.ndarray, field: GF) -> np.ndarray:
    """Rows form a canonical basis of {x : M x^T = 0}; (cols - rank) rows."""
    R, pivots = rref(M, field)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = field.neg(int(R[ri, fc]))
    return basis


def solve(A: np.ndarray, b, field: GF):
    """Any x with A x^T = b^T, or None when the system is inconsistent."""
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if A.shape[0] != b.shape[0]:
        raise ValueError("A rows must match len(b)")
    aug = np.hstack([A, b[:, None]])
    R, pivots = rref(aug, field)
    if A.shape[1] in pivots:
        return None
    x = np.zeros(A.shape[1], dtype=np.int64)
    for ri, pc in enumerate(pivots):
        x[pc] = R[ri, -1]
    return x
