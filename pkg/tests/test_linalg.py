import numpy as np

from lrctk.gf import make_field
from lrctk.linalg import null_space_basis, rank, rref, solve

from .oracles import oracle_rank

F7 = make_field(7)
F2 = make_field(2)


def test_rref_hand_example():
    R, piv = rref(np.array([[2, 4], [1, 2]]), F7)
    assert R.tolist() == [[1, 2], [0, 0]]
    assert piv == [0]


def test_rref_identity_fixed_point():
    I = np.eye(4, dtype=np.int64)
    R, piv = rref(I, F7)
    assert np.array_equal(R, I) and piv == [0, 1, 2, 3]


def test_rref_idempotent():
    rng = np.random.Generator(np.random.PCG64(11))
    for q in (2, 5, 8):
        F = make_field(q)
        for _ in range(25):
            M = rng.integers(0, q, (4, 6))
            R1, p1 = rref(M, F)
            R2, p2 = rref(R1, F)
            assert np.array_equal(R1, R2) and p1 == p2


def test_rank_examples():
    assert rank(np.eye(3, dtype=np.int64), F2) == 3
    assert rank(np.zeros((2, 4), dtype=np.int64), F7) == 0


def test_rank_transpose_and_oracle():
    rng = np.random.Generator(np.random.PCG64(13))
    for q in (2, 3, 7, 13):
        F = make_field(q)
        for _ in range(30):
            M = rng.integers(0, q, (rng.integers(1, 6), rng.integers(1, 7)))
            r = rank(M, F)
            assert r == rank(M.T, F)
            assert r == oracle_rank(M.tolist(), q)


def test_null_space_parity_check():
    B = null_space_basis(np.array([[1, 1, 1]]), F2)
    assert B.shape == (2, 3)
    for row in B:
        assert int(row.sum()) % 2 == 0


def test_null_space_full_rank_square():
    M = np.array([[1, 2], [3, 4]])
    assert rank(M, F7) == 2
    assert null_space_basis(M, F7).shape == (0, 2)


def test_null_space_defining_property_and_dimension():
    rng = np.random.Generator(np.random.PCG64(17))
    for q in (2, 5, 16):
        F = make_field(q)
        for _ in range(25):
            M = rng.integers(0, q, (3, 6))
            B = null_space_basis(M, F)
            assert B.shape[0] + rank(M, F) == M.shape[1]
            if B.shape[0]:
                assert not np.any(F.matmul(M, B.T))


def test_solve_identity():
    x = solve(np.eye(2, dtype=np.int64), [3, 5], F7)
    assert x.tolist() == [3, 5]


def test_solve_underdetermined_witness():
    x = solve(np.array([[1, 1]]), [1], F2)
    assert x is not None and int(x.sum()) % 2 == 1


def test_solve_inconsistent():
    assert solve(np.array([[1, 0], [1, 0]]), [0, 1], F2) is None


def test_solve_random_systems():
    rng = np.random.Generator(np.random.PCG64(19))
    for q in (3, 8):
        F = make_field(q)
        for _ in range(40):
            A = rng.integers(0, q, (3, 4))
            x0 = rng.integers(0, q, 4)
            b = F.matmul(A, x0[:, None])[:, 0]
            x = solve(A, b, F)
            assert x is not None
            assert np.array_equal(F.matmul(A, x[:, None])[:, 0], b)
