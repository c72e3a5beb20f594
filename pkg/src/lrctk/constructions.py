"""Builders for every code family: systematic Vandermonde MDS codes,
pyramid information-locality codes, parity-splitting all-symbol codes,
randomized general-position codes, and serial concatenation.

Every builder is deterministic given its parameters (and seed), so a
recorded recipe replays to a bit-identical generator matrix.
Vandermonde evaluation points are the canonical nonzero elements
1, 2, 3, ... for prime fields and successive generator powers for
extension fields.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .codes import LinearCode, encode, from_generator, min_distance, puncture
from .errors import (
    ConstructionFailure,
    DeltaExceedsD,
    FieldMismatch,
    FieldTooSmall,
    InfeasibleDelta,
    InfeasibleParams,
    InvalidParams,
)
from .gf import GF, make_field
from .linalg import null_space_basis, rref
from .locality import LocalGroup, LocalityProfile, check_general_position

DEFAULT_ATTEMPTS = 64


@dataclass(frozen=True)
class ConstructionRecipe:
    """Enough data to re-derive the identical code bit-for-bit.

    ``params`` drives the replay; ``provenance`` documents what the
    builder actually used (evaluation points, partition, accepted
    attempt) with 1-based coordinates, matching the file format.
    """

    kind: str  # rs | pyramid | parity_split | random_general_position | concatenated
    params: dict
    provenance: dict


def _field_params(F: GF) -> dict:
    out = {"q": F.q}
    if F.modulus:
        out["modulus"] = list(F.modulus)
    return out


def vandermonde(rows: int, points, F: GF) -> np.ndarray:
    """V[i, j] = points[j]^i."""
    V = np.zeros((rows, len(points)), dtype=np.int64)
    for j, x in enumerate(points):
        for i in range(rows):
            V[i, j] = F.pow(int(x), i)
    return V


def rs_code(n: int, k: int, F: GF) -> LinearCode:
    """Systematic [n, k, n-k+1] MDS code from a Vandermonde check matrix."""
    if not 1 <= k <= n:
        raise InvalidParams(f"need 1 <= k <= n, got n={n} k={k}")
    if F.q <= n:
        raise FieldTooSmall(f"need q > n for {n} distinct points, got q={F.q}")
    if k == n:
        return from_generator(np.eye(n, dtype=np.int64), F)
    H = vandermonde(n - k, F.points(n), F)
    B = null_space_basis(H, F)
    R, piv = rref(B, F)
    return from_generator(R, F, systematic_columns=piv)


def _local_groups(C: LinearCode, blocks, checks, budget=1 << 22) -> tuple[LocalGroup, ...]:
    """One LocalGroup per block, with the exact local distance measured."""
    groups = []
    for support, H in zip(blocks, checks):
        local = puncture(C, support)
        groups.append(LocalGroup(index=min(support), support=tuple(support),
                                 local_check=H, local_distance=min_distance(local, budget)))
    return tuple(groups)


def pyramid_code(k: int, r: int, delta: int, d: int, F: GF):
    """Split the first delta-1 parity columns of a [k+d-1, k, d] MDS base.

    Returns (code, profile, recipe); the code is [n, k] with
    n = k+d-1 + (ceil(k/r)-1)(delta-1) and information locality (r, delta).
    """
    if not (1 <= r <= k) or delta < 2:
        raise InvalidParams(f"need 1 <= r <= k and delta >= 2, got k={k} r={r} delta={delta}")
    if delta > d:
        raise DeltaExceedsD(f"delta={delta} exceeds d={d}")
    if F.q <= k + d - 1:
        raise FieldTooSmall(f"base MDS code needs q > k+d-1 = {k + d - 1}, got q={F.q}")
    base = rs_code(k + d - 1, k, F)
    Q = base.G[:, k:]
    alpha, beta = k // r, k % r
    sizes = [r] * alpha + ([beta] if beta else [])
    t = len(sizes)
    n = k + t * (delta - 1) + (d - delta)
    G = np.zeros((k, n), dtype=np.int64)
    G[:, :k] = np.eye(k, dtype=np.int64)
    blocks, checks = [], []
    row, col = 0, k
    for sz in sizes:
        Qb = Q[row : row + sz, : delta - 1]
        G[row : row + sz, col : col + delta - 1] = Qb
        support = list(range(row, row + sz)) + list(range(col, col + delta - 1))
        checks.append(np.hstack([F.neg(Qb.T), np.eye(delta - 1, dtype=np.int64)]))
        blocks.append(support)
        row += sz
        col += delta - 1
    G[:, col:] = Q[:, delta - 1 :]
    t_columns = list(range(col, n))
    code = from_generator(G, F, systematic_columns=range(k))
    profile = LocalityProfile(r=r, delta=delta, mode="information",
                              groups=_local_groups(code, blocks, checks))
    recipe = ConstructionRecipe(
        kind="pyramid",
        params={**_field_params(F), "k": k, "r": r, "delta": delta, "d": d},
        provenance={
            "points": F.points(k + d - 1),
            "block_sizes": sizes,
            "t_columns": [c + 1 for c in t_columns],
            "group_supports": [[c + 1 for c in b] for b in blocks],
        },
    )
    return code, profile, recipe


def parity_split_code(k: int, r: int, delta: int, F: GF):
    """Split the first delta-1 rows of a Vandermonde RS check matrix into
    block-diagonal local checks; all-symbol locality (r, delta) with
    n = ceil(k/r)(r+delta-1)."""
    if k < 1 or r < 1 or delta < 2:
        raise InvalidParams(f"need k >= 1, r >= 1, delta >= 2, got k={k} r={r} delta={delta}")
    t = -(-k // r)
    n = t * (r + delta - 1)
    kp = k + (t - 1) * (delta - 1)
    d = n - kp + 1
    if delta > d:
        raise InfeasibleDelta(f"delta={delta} exceeds implied d={d}")
    if F.q <= n:
        raise FieldTooSmall(f"need q > n = {n}, got q={F.q}")
    points = F.points(n)
    H1 = vandermonde(n - kp, points, F)
    width = r + delta - 1
    H = np.zeros((t * (delta - 1) + (n - kp - (delta - 1)), n), dtype=np.int64)
    blocks, checks = [], []
    for b in range(t):
        cols = list(range(b * width, (b + 1) * width))
        H[b * (delta - 1) : (b + 1) * (delta - 1), cols] = H1[: delta - 1, cols]
        blocks.append(cols)
        checks.append(H1[: delta - 1, cols].copy())
    H[t * (delta - 1) :, :] = H1[delta - 1 :, :]
    assert len(rref(H, F)[1]) == n - k, "split Vandermonde rows must stay independent"
    B = null_space_basis(H, F)
    R, piv = rref(B, F)
    code = from_generator(R, F, systematic_columns=piv)
    profile = LocalityProfile(r=r, delta=delta, mode="all_symbol",
                              groups=_local_groups(code, blocks, checks))
    recipe = ConstructionRecipe(
        kind="parity_split",
        params={**_field_params(F), "k": k, "r": r, "delta": delta},
        provenance={
            "points": points,
            "partition": [[c + 1 for c in b] for b in blocks],
        },
    )
    return code, profile, recipe


def random_all_symbol_code(k: int, r: int, delta: int, t: int, F: GF,
                           seed: int, attempts: int = DEFAULT_ATTEMPTS,
                           threads: int = 1):
    """Sample generator columns in the orthogonal complement of the
    block-diagonal local space until they reach general position.

    Attempt i uses the PCG64 stream seeded with seed+i; the lowest
    successful attempt wins, so results do not depend on ``threads``.
    """
    if r < 1 or delta < 2 or t < 1:
        raise InvalidParams(f"need r >= 1, delta >= 2, t >= 1, got r={r} delta={delta} t={t}")
    width = r + delta - 1
    n = t * width
    if not 0 < k <= n - t * (delta - 1):
        raise InfeasibleParams(f"need 0 < k <= n - t(delta-1) = {n - t * (delta - 1)}, got k={k}")
    if F.q <= width:
        raise FieldTooSmall(f"local MDS code needs q > r+delta-1 = {width}, got q={F.q}")
    Q = vandermonde(delta - 1, F.points(width), F)
    L = np.zeros((t * (delta - 1), n), dtype=np.int64)
    blocks = []
    for b in range(t):
        cols = list(range(b * width, (b + 1) * width))
        L[b * (delta - 1) : (b + 1) * (delta - 1), cols] = Q
        blocks.append(cols)
    B = null_space_basis(L, F)

    def try_attempt(i):
        rng = np.random.Generator(np.random.PCG64(seed + i))
        M = rng.integers(0, F.q, size=(k, B.shape[0]), dtype=np.int64)
        G = F.matmul(M, B)
        return G, check_general_position(G, blocks, r, k, F, L=L)

    last = None
    found = None
    idx = 0
    while idx < attempts and found is None:
        batch = list(range(idx, min(idx + max(1, threads), attempts)))
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                results = list(ex.map(try_attempt, batch))
        else:
            results = [try_attempt(i) for i in batch]
        for i, (G, rep) in zip(batch, results):
            last = G
            if rep.ok:
                found = (i, G)
                break
        idx += len(batch)
    if found is None:
        rep = check_general_position(last, blocks, r, k, F, L=L, count_failures=True)
        raise ConstructionFailure(
            f"no general-position sample in {attempts} attempts "
            f"({rep.failures} of {rep.total_cores} k-cores failed on the last)",
            attempts, rep.failures)
    accepted, G = found
    code = from_generator(G, F)
    profile = LocalityProfile(r=r, delta=delta, mode="all_symbol",
                              groups=_local_groups(code, blocks, [Q.copy() for _ in blocks]))
    recipe = ConstructionRecipe(
        kind="random_general_position",
        params={**_field_params(F), "k": k, "r": r, "delta": delta, "t": t,
                "seed": seed, "attempts": attempts},
        provenance={
            "partition": [[c + 1 for c in b] for b in blocks],
            "accepted_attempt": accepted,
            "attempt_seed": seed + accepted,
        },
    )
    return code, profile, recipe


def _coordinate_maps(F_out: GF, F_in: GF, k1: int):
    """(pack, unpack) between length-k1 inner vectors and outer elements,
    the coordinate map of the fixed polynomial basis 1, y, .., y^(k1-1)."""
    if F_out.q != F_in.q**k1:
        raise FieldMismatch(f"outer order {F_out.q} != inner order {F_in.q}^{k1}")
    if k1 == 1 and F_out.q == F_in.q:
        return (lambda syms: int(syms[0])), (lambda e: [int(e)])
    if F_in.q == 2:
        def pack(syms):
            return sum(int(s) << j for j, s in enumerate(syms))

        def unpack(e):
            return [(e >> j) & 1 for j in range(k1)]

        return pack, unpack
    if F_in.p != 2 or F_out.p != 2:
        raise FieldMismatch("only binary-extension towers are supported")
    m0 = F_in.m
    # phi embeds F_in into F_out through the smallest root of F_in's modulus.
    root = None
    for e in range(F_out.q):
        acc = 0
        for i, c in enumerate(F_in.modulus):
            if c:
                acc ^= F_out.pow(e, i)
        if acc == 0 and e >= 2:
            root = e
            break
    if root is None:
        raise FieldMismatch("inner modulus has no root in the outer field")

    def phi(a):
        acc = 0
        for i in range(m0):
            if (a >> i) & 1:
                acc ^= F_out.pow(root, i)
        return acc

    y = 2
    mt = m0 * k1
    T = np.zeros((mt, mt), dtype=np.int64)
    for j in range(k1):
        yj = F_out.pow(y, j)
        for i in range(m0):
            e = F_out.mul(phi(1 << i), yj)
            for b in range(mt):
                T[b, j * m0 + i] = (e >> b) & 1
    gf2 = make_field(2)
    aug, piv = rref(np.hstack([T, np.eye(mt, dtype=np.int64)]), gf2)
    assert piv == list(range(mt)), "basis powers must be independent over the subfield"
    Tinv = aug[:, mt:]

    def pack(syms):
        acc = 0
        for j, s in enumerate(syms):
            acc ^= F_out.mul(phi(int(s)), F_out.pow(y, j))
        return acc

    def unpack(e):
        bits = np.array([(e >> b) & 1 for b in range(mt)], dtype=np.int64)
        coeffs = (Tinv @ bits) % 2
        return [int(sum(int(coeffs[j * m0 + i]) << i for i in range(m0))) for j in range(k1)]

    return pack, unpack


def concatenate(outer: LinearCode, inner: LinearCode, coordinate_maps=None):
    """Serial concatenation: outer encode, map each outer symbol to k1
    inner symbols through the polynomial-basis coordinate map, inner
    encode each block.  Returns the explicit [n1 n2, k1 k2] code over
    the inner field, plus its recipe."""
    F_in, F_out = inner.field, outer.field
    k1, n1, k2, n2 = inner.k, inner.n, outer.k, outer.n
    pack, unpack = coordinate_maps if coordinate_maps else _coordinate_maps(F_out, F_in, k1)
    rows = []
    for j in range(k2):
        for t in range(k1):
            sigma = pack([1 if s == t else 0 for s in range(k1)])
            msg = np.zeros(k2, dtype=np.int64)
            msg[j] = sigma
            w = encode(outer, msg)
            rows.append(np.concatenate([encode(inner, unpack(int(ws))) for ws in w]))
    G = np.stack(rows)
    syscols = None
    if inner.systematic_columns and outer.systematic_columns:
        cand = [outer.systematic_columns[j] * n1 + inner.systematic_columns[t]
                for j in range(k2) for t in range(k1)]
        if np.array_equal(G[:, cand], np.eye(k1 * k2, dtype=np.int64)):
            syscols = cand
    code = from_generator(G, F_in, systematic_columns=syscols)
    recipe = ConstructionRecipe(
        kind="concatenated",
        params={"n1": n1, "k1": k1, "n2": n2, "k2": k2},
        provenance={
            "inner": {**_field_params(F_in), "n": n1, "k": k1, "generator": inner.G.tolist()},
            "outer": {**_field_params(F_out), "n": n2, "k": k2, "generator": outer.G.tolist()},
        },
    )
    return code, recipe


def build_from_recipe(recipe: ConstructionRecipe):
    """Replay a recipe; returns (code, profile_or_None, recipe)."""
    p = recipe.params
    if recipe.kind == "concatenated":
        prov = recipe.provenance
        inner = from_generator(np.array(prov["inner"]["generator"], dtype=np.int64),
                               make_field(prov["inner"]["q"], prov["inner"].get("modulus")))
        outer = from_generator(np.array(prov["outer"]["generator"], dtype=np.int64),
                               make_field(prov["outer"]["q"], prov["outer"].get("modulus")))
        code, rec = concatenate(outer, inner)
        return code, None, rec
    F = make_field(p["q"], p.get("modulus"))
    if recipe.kind == "rs":
        return rs_code(p["n"], p["k"], F), None, recipe
    if recipe.kind == "pyramid":
        return pyramid_code(p["k"], p["r"], p["delta"], p["d"], F)
    if recipe.kind == "parity_split":
        return parity_split_code(p["k"], p["r"], p["delta"], F)
    if recipe.kind == "random_general_position":
        return random_all_symbol_code(p["k"], p["r"], p["delta"], p["t"], F,
                                      p["seed"], p.get("attempts", DEFAULT_ATTEMPTS))
    raise InvalidParams(f"unknown recipe kind {recipe.kind!r}")
