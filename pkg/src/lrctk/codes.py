"""Linear codes and their exhaustively computed analytics.

Minimum distance enumerates one representative per projective message
class (weight is scalar-invariant), batched through numpy.  Support
weights enumerate canonical RREF representatives of the i-dimensional
message subspaces, one batch of representatives at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import (
    BudgetExceeded,
    EmptySupport,
    InconsistentInput,
    InvalidParams,
    LengthMismatch,
    RankDeficient,
)
from .gf import GF
from .linalg import as_matrix, null_space_basis, rank, rref

DISTANCE_BUDGET = 1 << 24  # cap on q^k codeword enumerations
SUBSPACE_BUDGET = 1 << 22  # cap on subspaces per hierarchy level
_CHUNK = 1 << 14


@dataclass(eq=False)
class LinearCode:
    """An [n, k] code held as a full-rank generator matrix."""

    field: GF
    n: int
    k: int
    G: np.ndarray
    systematic_columns: tuple[int, ...] = ()

    def __post_init__(self):
        self.G = np.asarray(self.G, dtype=np.int64)
        self.G.setflags(write=False)

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}] over GF({self.field.q}))"


@dataclass(frozen=True)
class WeightHierarchy:
    """Support weights d_1..d_k and the n-k gap numbers."""

    dims: tuple[int, ...]
    gaps: tuple[int, ...]
    source: str = "direct"  # "direct" or "dual"


def gap_numbers(dims, n: int) -> tuple[int, ...]:
    """[n] minus the support weights, ascending."""
    return tuple(sorted(set(range(1, n + 1)) - set(dims)))


def from_generator(G, F: GF, systematic_columns=None) -> LinearCode:
    """Wrap a full-rank generator matrix; RankDeficient names bad rows."""
    G = as_matrix(G, F)
    k, n = G.shape
    if k > n:
        raise InvalidParams(f"k={k} exceeds n={n}")
    if rank(G, F) != k:
        dep = []
        r = 0
        for i in range(k):
            nr = rank(G[: i + 1], F)
            if nr == r:
                dep.append(i)
            r = nr
        raise RankDeficient(f"generator rows {dep} are dependent", dependent_rows=dep)
    if systematic_columns is not None:
        cols = tuple(systematic_columns)
        if len(cols) != k or not np.array_equal(G[:, cols], np.eye(k, dtype=np.int64)):
            raise InvalidParams("declared systematic columns do not form the identity")
    elif k <= n and np.array_equal(G[:, :k], np.eye(k, dtype=np.int64)):
        cols = tuple(range(k))
    else:
        cols = ()
    return LinearCode(F, n, k, G, cols)


def dual_code(C: LinearCode) -> LinearCode:
    """The [n, n-k] code orthogonal to C."""
    H = null_space_basis(C.G, C.field)
    return LinearCode(C.field, C.n, C.n - C.k, H, ())


def _check_support(C: LinearCode, S) -> list[int]:
    cols = sorted(set(int(s) for s in S))
    if not cols:
        raise EmptySupport("coordinate set is empty")
    if cols[0] < 0 or cols[-1] >= C.n:
        raise InvalidParams(f"coordinates must lie in [0, {C.n})")
    return cols


def puncture(C: LinearCode, S) -> LinearCode:
    """C restricted to the coordinates in S, re-reduced to full rank."""
    cols = _check_support(C, S)
    R, piv = rref(C.G[:, cols], C.field)
    return LinearCode(C.field, len(cols), len(piv), R[: len(piv)], tuple(piv))


def shorten(C: LinearCode, S) -> LinearCode:
    """Codewords of C that vanish outside S, restricted to S.

    A zero-dimensional result is returned as a valid [|S|, 0] marker.
    """
    cols = _check_support(C, S)
    comp = sorted(set(range(C.n)) - set(cols))
    if not comp:
        return LinearCode(C.field, C.n, C.k, C.G.copy(), C.systematic_columns)
    B = null_space_basis(C.G[:, comp].T, C.field)
    if B.shape[0] == 0:
        return LinearCode(C.field, len(cols), 0, np.zeros((0, len(cols)), dtype=np.int64))
    Gs = C.field.matmul(B, C.G)[:, cols]
    R, piv = rref(Gs, C.field)
    return LinearCode(C.field, len(cols), len(piv), R[: len(piv)], tuple(piv))


def encode(C: LinearCode, message) -> np.ndarray:
    """message . G"""
    m = np.asarray(message, dtype=np.int64).reshape(-1)
    if m.shape[0] != C.k:
        raise LengthMismatch(f"message length {m.shape[0]} != k={C.k}")
    return C.field.matmul(m[None, :], C.G)[0]


def _digits(idx: np.ndarray, q: int, width: int) -> np.ndarray:
    """Mixed-radix digits of idx, most significant first, shape (B, width)."""
    out = np.empty((idx.size, width), dtype=np.int64)
    rem = idx.copy()
    for pos in range(width - 1, -1, -1):
        out[:, pos] = rem % q
        rem //= q
    return out


def min_weight_word(C: LinearCode, budget: int = DISTANCE_BUDGET) -> tuple[int, np.ndarray]:
    """Exact minimum weight and the first minimal codeword found.

    Scans one representative per projective message class in a fixed
    order, so the witness is deterministic.
    """
    q, k, G = C.field.q, C.k, C.G
    if k == 0:
        raise InvalidParams("zero-dimensional code has no nonzero codeword")
    if q**k > budget:
        raise BudgetExceeded(f"q^k = {q**k} exceeds budget {budget}")
    best = C.n + 1
    best_word = None
    for lead in range(k):
        width = k - 1 - lead
        total = q**width
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
            msgs = np.zeros((idx.size, k), dtype=np.int64)
            msgs[:, lead] = 1
            if width:
                msgs[:, lead + 1 :] = _digits(idx, q, width)
            words = C.field.matmul(msgs, G)
            weights = np.count_nonzero(words, axis=1)
            mn = int(weights.min())
            if mn < best:
                best = mn
                best_word = words[int(np.argmax(weights == mn))].copy()
                if best == 1:
                    return best, best_word
    return best, best_word


def min_distance(C: LinearCode, budget: int = DISTANCE_BUDGET) -> int:
    """Exact minimum Hamming weight over all nonzero codewords."""
    return min_weight_word(C, budget)[0]


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n, exact."""
    num, den = 1, 1
    for j in range(k):
        num *= q ** (n - j) - 1
        den *= q ** (j + 1) - 1
    return num // den


def _rref_batches(k: int, i: int, q: int):
    """Batches of canonical i x k RREF representatives, shape (B, i, k)."""
    for piv in combinations(range(k), i):
        pivset = set(piv)
        cells = [(t, c) for t in range(i) for c in range(piv[t] + 1, k) if c not in pivset]
        template = np.zeros((i, k), dtype=np.int64)
        for t, pc in enumerate(piv):
            template[t, pc] = 1
        total = q ** len(cells)
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
            batch = np.broadcast_to(template, (idx.size, i, k)).copy()
            if cells:
                dig = _digits(idx, q, len(cells))
                for ci, (t, c) in enumerate(cells):
                    batch[:, t, c] = dig[:, ci]
            yield batch


def support_weight(C: LinearCode, i: int, subspace_budget: int = SUBSPACE_BUDGET) -> int:
    """d_i: minimum support size over all i-dimensional subcodes."""
    q, k, n = C.field.q, C.k, C.n
    if not 1 <= i <= k:
        raise InvalidParams(f"level must lie in [1, {k}], got {i}")
    count = gaussian_binomial(k, i, q)
    if count > subspace_budget:
        raise BudgetExceeded(f"{count} subspaces at level {i} exceed budget {subspace_budget}")
    best = n + 1
    for batch in _rref_batches(k, i, q):
        b = batch.shape[0]
        prods = C.field.matmul(batch.reshape(b * i, k), C.G).reshape(b, i, n)
        supp = (prods != 0).any(axis=1).sum(axis=1)
        best = min(best, int(supp.min()))
    return best


def weight_hierarchy(C: LinearCode, subspace_budget: int = SUBSPACE_BUDGET) -> WeightHierarchy:
    """Exact d_1..d_k by enumerating all i-dimensional subcodes per level."""
    if C.k == 0:
        raise InvalidParams("zero-dimensional code has no hierarchy")
    dims = [support_weight(C, i, subspace_budget) for i in range(1, C.k + 1)]
    return WeightHierarchy(tuple(dims), gap_numbers(dims, C.n), "direct")


def _deficient_support_exists(C: LinearCode, size: int, level: int, H: np.ndarray,
                              subset_budget: int) -> bool:
    """Whether some |S| = size has |S| - rank(G|_S) >= level.

    An i-dimensional subcode of the dual lives exactly on the supports S
    with rank deficiency >= i, so these scans compute dual support
    weights without enumerating subspaces.  The scan runs on whichever
    of S / complement(S) is smaller: rank(G|_S) <= size - level is
    equivalent to rank(H|_T) <= (n-k) - level for T the complement.
    """
    n, k = C.n, C.k
    if size < level:
        return False
    if size - level >= k:
        return True  # rank(G|_S) <= k always
    t = n - size
    if comb(n, size) <= comb(n, t):
        if comb(n, size) > subset_budget:
            raise BudgetExceeded(f"C({n},{size}) subsets exceed budget {subset_budget}")
        for S in combinations(range(n), size):
            if rank(C.G[:, S], C.field) <= size - level:
                return True
        return False
    if comb(n, t) > subset_budget:
        raise BudgetExceeded(f"C({n},{t}) subsets exceed budget {subset_budget}")
    bound = (n - k) - level
    for T in combinations(range(n), t):
        if rank(H[:, T], C.field) <= bound:
            return True
    return False


def dual_support_weight(C: LinearCode, level: int, subset_budget: int = 1 << 20) -> int:
    """d_level of the dual code, via ascending deficiency scans."""
    if not 1 <= level <= C.n - C.k:
        raise InvalidParams(f"dual level must lie in [1, {C.n - C.k}], got {level}")
    H = null_space_basis(C.G, C.field)
    for s in range(level, C.n + 1):
        if _deficient_support_exists(C, s, level, H, subset_budget):
            return s
    raise InvalidParams("unreachable: the full support always has deficiency n-k")


def dual_support_weight_equals(C: LinearCode, level: int, expected: int,
                               subset_budget: int = 1 << 20) -> bool:
    """Exact check d_level(dual) == expected with two subset scans.

    Deficiency witnesses are closed under taking supersets, so absence
    at size expected-1 rules out every smaller size too.
    """
    if not 1 <= level <= C.n - C.k:
        raise InvalidParams(f"dual level must lie in [1, {C.n - C.k}], got {level}")
    H = null_space_basis(C.G, C.field)
    if not _deficient_support_exists(C, expected, level, H, subset_budget):
        return False
    return not _deficient_support_exists(C, expected - 1, level, H, subset_budget)


def wei_dual_hierarchy(dual_hierarchy, n: int, k: int) -> WeightHierarchy:
    """Primal hierarchy from the dual's: {d_i} = [n] \\ {n+1-d_j_dual}."""
    dd = dual_hierarchy.dims if isinstance(dual_hierarchy, WeightHierarchy) else tuple(dual_hierarchy)
    if len(dd) != n - k:
        raise InconsistentInput(f"dual hierarchy must have {n - k} weights, got {len(dd)}")
    if any(dd[j] >= dd[j + 1] for j in range(len(dd) - 1)):
        raise InconsistentInput("dual weights must be strictly increasing")
    if dd and (dd[0] < 1 or dd[-1] != n):
        raise InconsistentInput(f"dual weights must end at n={n}")
    dims = tuple(sorted(set(range(1, n + 1)) - {n + 1 - d for d in dd}))
    if len(dims) != k:
        raise InconsistentInput("mapped hierarchy does not have k weights")
    return WeightHierarchy(dims, gap_numbers(dims, n), "dual")


def hierarchy_auto(C: LinearCode, subspace_budget: int = SUBSPACE_BUDGET) -> WeightHierarchy:
    """Direct hierarchy when enumerable, else the dual route through Wei duality."""
    try:
        return weight_hierarchy(C, subspace_budget)
    except BudgetExceeded:
        dual_h = weight_hierarchy(dual_code(C), subspace_budget)
        return wei_dual_hierarchy(dual_h, C.n, C.k)
