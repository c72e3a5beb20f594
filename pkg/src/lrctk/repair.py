"""Erasure repair: local recovery through a group, global decoding, and
per-coordinate repairability classification.

Erased positions are represented as None inside word vectors (null in
the JSON format), so they can never collide with a field element.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import LinearCode, puncture
from .errors import (
    InvalidParams,
    InvalidProfile,
    NoGroup,
    TooManyLocalErasures,
    Unrecoverable,
)
from .linalg import null_space_basis, rank, rref
from .locality import LocalityProfile


@dataclass(frozen=True)
class ErasurePattern:
    erased: frozenset
    n: int

    def __post_init__(self):
        if not all(0 <= i < self.n for i in self.erased):
            raise InvalidParams("erased coordinates outside [0, n)")


@dataclass(frozen=True)
class RepairReport:
    """Outcome of one repair: what was read and what was recovered."""

    target: int | None
    method: str  # local | global | failed
    symbols_read: int
    read_positions: tuple[int, ...]
    group_used: tuple[int, ...] | None
    value: object  # recovered symbol (or full word for whole-word decode)


def _erased_positions(word) -> list[int]:
    return [i for i, v in enumerate(word) if v is None]


def local_repair(C: LinearCode, P: LocalityProfile, word, target: int) -> RepairReport:
    """Recover one erased symbol through a group with <= delta-1 erasures.

    When the target is the only in-group erasure, the solver selects the
    lexicographically first set of columns spanning the local code and
    reads exactly those (r reads for a full-size group).
    """
    if len(word) != C.n:
        raise InvalidParams(f"word length {len(word)} != n={C.n}")
    erased = set(_erased_positions(word))
    if target not in erased:
        raise InvalidParams(f"target {target + 1} is not erased")
    containing = [(gi, g) for gi, g in enumerate(P.groups) if target in g.support]
    if not containing:
        raise NoGroup(f"no group covers coordinate {target + 1}")
    viable = [(len(erased & set(g.support)), gi, g) for gi, g in containing]
    viable = [v for v in viable if v[0] <= P.delta - 1]
    if not viable:
        raise TooManyLocalErasures(
            f"every group covering {target + 1} has >= delta={P.delta} erasures")
    _, gi, g = min(viable, key=lambda v: (v[0], v[1]))
    S = sorted(g.support)
    F = C.field
    in_group_erased = [j for j, c in enumerate(S) if c in erased]
    tpos = S.index(target)

    if in_group_erased == [tpos]:
        local = puncture(C, S)
        rho = local.k
        cols: list[int] = []
        for j in range(len(S)):
            if j == tpos:
                continue
            if rank(local.G[:, cols + [j]], F) > len(cols):
                cols.append(j)
                if len(cols) == rho:
                    break
        vals = np.array([word[S[j]] for j in cols], dtype=np.int64)
        aug = np.hstack([local.G[:, cols].T, vals[:, None]])
        R, piv = rref(aug, F)
        u = np.zeros(rho, dtype=np.int64)
        for ri, pc in enumerate(piv):
            u[pc] = R[ri, -1]
        value = int(F.matmul(u[None, :], local.G[:, [tpos]])[0, 0])
        reads = tuple(S[j] for j in cols)
        return RepairReport(target, "local", len(reads), reads, tuple(S), value)

    H = np.asarray(g.local_check, dtype=np.int64)
    known = [j for j in range(len(S)) if j not in in_group_erased]
    vals = np.array([word[S[j]] for j in known], dtype=np.int64)
    b = F.neg(F.matmul(H[:, known], vals[:, None]))[:, 0]
    A = H[:, in_group_erased]
    aug = np.hstack([A, b[:, None]])
    R, piv = rref(aug, F)
    if A.shape[1] in piv:
        raise Unrecoverable("known symbols violate the local checks", "inconsistent")
    if len(piv) < len(in_group_erased):
        raise InvalidProfile(
            f"group {gi} cannot uniquely solve {len(in_group_erased)} erasures; "
            f"its local distance is below delta")
    x = np.zeros(len(in_group_erased), dtype=np.int64)
    for ri, pc in enumerate(piv):
        x[pc] = R[ri, -1]
    value = int(x[in_group_erased.index(tpos)])
    reads = tuple(S[j] for j in known)
    return RepairReport(target, "local", len(reads), reads, tuple(S), value)


def global_decode(C: LinearCode, word) -> np.ndarray:
    """Unique completion of the word from the full parity-check system."""
    if len(word) != C.n:
        raise InvalidParams(f"word length {len(word)} != n={C.n}")
    erased = _erased_positions(word)
    if not erased:
        return np.array([int(v) for v in word], dtype=np.int64)
    F = C.field
    H = null_space_basis(C.G, F)
    known = [i for i in range(C.n) if i not in erased]
    vals = np.array([word[i] for i in known], dtype=np.int64)
    b = F.neg(F.matmul(H[:, known], vals[:, None]))[:, 0] if known else np.zeros(H.shape[0], dtype=np.int64)
    A = H[:, erased]
    aug = np.hstack([A, b[:, None]])
    R, piv = rref(aug, F)
    if A.shape[1] in piv:
        raise Unrecoverable("no codeword matches the known symbols", "inconsistent")
    if len(piv) < len(erased):
        raise Unrecoverable(f"{len(erased)} erasures admit several completions", "ambiguous")
    out = np.zeros(C.n, dtype=np.int64)
    out[known] = vals
    for ri, pc in enumerate(piv):
        out[erased[pc]] = R[ri, -1]
    return out


def repairability(C: LinearCode, P: LocalityProfile, pattern: ErasurePattern) -> dict:
    """Classify each erased coordinate: local, global (only), or lost."""
    if pattern.n != C.n:
        raise InvalidParams("pattern length mismatch")
    erased = sorted(pattern.erased)
    if not erased:
        return {}
    F = C.field
    H = null_space_basis(C.G, F)
    ns = null_space_basis(H[:, erased], F)
    ambiguous = (ns != 0).any(axis=0) if ns.shape[0] else np.zeros(len(erased), dtype=bool)
    out = {}
    for pos, c in enumerate(erased):
        local = any(
            c in g.support and len(pattern.erased & set(g.support)) <= P.delta - 1
            for g in P.groups
        )
        if local:
            out[c] = "local"
        elif not ambiguous[pos]:
            out[c] = "global"
        else:
            out[c] = "lost"
    return out
