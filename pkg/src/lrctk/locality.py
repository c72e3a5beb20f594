"""Locality verification, k-cores, general position and optimality certificates.

A local group realizes the (r, delta) definition: the code punctured to
the group's support has length at most r + delta - 1 and minimum
distance at least delta, so the protected coordinate survives delta - 2
extra in-group failures.  Every check here recomputes the claimed
property from the generator matrix; nothing is trusted from metadata.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .bounds import locality_bound
from .codes import (
    DISTANCE_BUDGET,
    SUBSPACE_BUDGET,
    LinearCode,
    dual_code,
    dual_support_weight_equals,
    min_distance,
    puncture,
    shorten,
)
from .errors import BudgetExceeded, InvalidParams
from .gf import GF
from .linalg import null_space_basis, rank

_WORD_ENUM_CAP = 1 << 22  # dual-codeword route cap in symbol_locality
_SUBSET_CAP = 1 << 18  # support-subset route cap in symbol_locality
_CORE_CAP = 1 << 20  # exhaustive k-core enumeration cap
_DEFICIENT_N_CAP = 14  # exhaustive subset scan cap


@dataclass(frozen=True)
class LocalGroup:
    """One repair group: protected coordinate, support, local check matrix."""

    index: int
    support: tuple[int, ...]
    local_check: np.ndarray
    local_distance: int


@dataclass(frozen=True)
class LocalityProfile:
    """(r, delta) locality claim over information or all symbols."""

    r: int
    delta: int
    mode: str  # "information" | "all_symbol"
    groups: tuple[LocalGroup, ...]


@dataclass(frozen=True)
class OptimalityCertificate:
    """Brute-force facts certifying or refuting optimality of a profile."""

    measured_d: int
    bound_d: int
    tight: bool
    dual_hierarchy_check: str  # pass | fail | skipped
    structural_check: str  # pass | fail | skipped | not_applicable
    details: tuple[str, ...]
    profile_valid: bool
    sound: bool

    def to_dict(self) -> dict:
        return {
            "measured_d": self.measured_d,
            "bound_d": self.bound_d,
            "tight": self.tight,
            "dual_hierarchy_check": self.dual_hierarchy_check,
            "structural_check": self.structural_check,
            "details": list(self.details),
            "profile_valid": self.profile_valid,
            "sound": self.sound,
        }


def _low_weight_dual_supports(C: LinearCode, wmax: int) -> list[frozenset]:
    """All distinct supports of dual codewords of weight in [1, wmax].

    Routes: enumerate the dual code when q^(n-k) is small, otherwise
    scan coordinate subsets of size wmax; both give the same set.
    """
    F, n = C.field, C.n
    q = F.q
    kd = n - C.k
    if kd == 0:
        return []
    supports: set[frozenset] = set()
    if q**kd <= _WORD_ENUM_CAP:
        D = dual_code(C)
        from .codes import _CHUNK, _digits  # projective scan, same as min_weight_word

        for lead in range(kd):
            width = kd - 1 - lead
            total = q**width
            for start in range(0, total, _CHUNK):
                idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
                msgs = np.zeros((idx.size, kd), dtype=np.int64)
                msgs[:, lead] = 1
                if width:
                    msgs[:, lead + 1 :] = _digits(idx, q, width)
                words = F.matmul(msgs, D.G)
                nz = words != 0
                weights = nz.sum(axis=1)
                for row in np.nonzero((weights >= 1) & (weights <= wmax))[0]:
                    supports.add(frozenset(np.nonzero(nz[row])[0].tolist()))
        return sorted(supports, key=lambda s: (len(s), sorted(s)))
    if comb(n, min(wmax, n)) > _SUBSET_CAP:
        raise BudgetExceeded(f"dual-word search infeasible: q^(n-k)={q**kd}, C({n},{wmax}) too large")
    for T in combinations(range(n), min(wmax, n)):
        ns = null_space_basis(C.G[:, T], F)
        nu = ns.shape[0]
        if nu == 0:
            continue
        if q**nu > _WORD_ENUM_CAP:
            raise BudgetExceeded(f"{q**nu} dual words inside one subset exceed the cap")
        from .codes import _digits

        idx = np.arange(1, q**nu, dtype=np.int64)
        words = F.matmul(_digits(idx, q, nu), ns)
        for row in range(words.shape[0]):
            supp = np.nonzero(words[row])[0]
            if supp.size:
                supports.add(frozenset(int(T[j]) for j in supp))
    return sorted(supports, key=lambda s: (len(s), sorted(s)))


def symbol_locality(C: LinearCode, i: int, r: int, delta: int,
                    distance_budget: int = DISTANCE_BUDGET):
    """Smallest valid (r, delta) group for coordinate i, or None.

    Any valid support is a union of supports of dual codewords of weight
    at most r + delta - 1 (a coordinate untouched by every in-support
    dual word would put a weight-1 word in the punctured code), so the
    search over such unions is exhaustive.  None means proven absence;
    a truncated search raises BudgetExceeded instead.
    """
    if not 0 <= i < C.n:
        raise InvalidParams(f"coordinate {i} outside [0, {C.n})")
    if delta < 2:
        raise InvalidParams("delta must be >= 2")
    size_max = r + delta - 1
    supports = _low_weight_dual_supports(C, size_max)
    candidates: set[frozenset] = set()
    frontier = [s for s in supports if len(s) <= size_max]
    seen = set(frontier)
    while frontier:
        nxt = []
        for s in frontier:
            if i in s:
                candidates.add(s)
            for t in supports:
                u = s | t
                if len(u) <= size_max and u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    accepted = []
    for cand in sorted(candidates, key=lambda s: sorted(s)):
        S = sorted(cand)
        local = puncture(C, S)
        if local.k == 0:
            continue
        pos = S.index(i)
        if not np.any(local.G[:, pos]):
            continue
        if min_distance(local, distance_budget) < delta:
            continue
        accepted.append(S)
    if not accepted:
        return None
    S = min(accepted, key=tuple)
    H = null_space_basis(C.G[:, S], C.field)
    local = puncture(C, S)
    return LocalGroup(index=i, support=tuple(S), local_check=H,
                      local_distance=min_distance(local, distance_budget))


def check_profile(C: LinearCode, P: LocalityProfile,
                  distance_budget: int = DISTANCE_BUDGET) -> list[str]:
    """Verify every group invariant and coverage; empty list means pass."""
    violations: list[str] = []
    n = C.n
    size_max = P.r + P.delta - 1
    good_cover: set[int] = set()
    for gi, g in enumerate(P.groups):
        tag = f"group {gi}"
        S = list(g.support)
        ok = True
        if len(set(S)) != len(S) or not S or min(S) < 0 or max(S) >= n:
            violations.append(f"{tag}: support is not a valid coordinate set")
            continue
        if g.index not in g.support:
            violations.append(f"{tag}: index {g.index + 1} not in its own support")
            ok = False
        if len(S) > size_max:
            violations.append(f"{tag}: size |S|={len(S)} exceeds r+delta-1={size_max}")
            ok = False
        H = np.asarray(g.local_check, dtype=np.int64)
        if H.ndim != 2 or H.shape[1] != len(S):
            violations.append(f"{tag}: local check shape {H.shape} does not match |S|={len(S)}")
            continue
        if rank(H, C.field) != H.shape[0]:
            violations.append(f"{tag}: local check rows are dependent")
            ok = False
        if np.any(C.field.matmul(C.G[:, S], H.T)):
            violations.append(f"{tag}: local check rows are not dual to the punctured code")
            ok = False
        w = min(P.delta - 1, len(S))
        for cols in combinations(range(len(S)), w):
            if rank(H[:, cols], C.field) != w:
                violations.append(f"{tag}: {w} columns {cols} of the local check are dependent")
                ok = False
                break
        local = puncture(C, S)
        if local.k == 0:
            violations.append(f"{tag}: punctured code is zero-dimensional")
            ok = False
        else:
            d_loc = min_distance(local, distance_budget)
            if d_loc < P.delta:
                violations.append(f"{tag}: local distance {d_loc} < delta={P.delta}")
                ok = False
        if ok:
            for j, c in enumerate(S):
                if np.any(local.G[:, j]):
                    good_cover.add(c)
    if P.mode == "information":
        required = set(C.systematic_columns) if C.systematic_columns else set(range(C.k))
    elif P.mode == "all_symbol":
        required = set(range(n))
    else:
        return violations + [f"unknown mode {P.mode!r}"]
    missing = sorted(required - good_cover)
    if missing:
        violations.append(f"coverage: coordinates {[c + 1 for c in missing]} not protected by any valid group")
    return violations


def is_k_core(partition, r: int, S) -> bool:
    """Block form: S meets every partition block in at most r coordinates."""
    Sset = set(S)
    return all(len(Sset & set(P)) <= r for P in partition)


def is_k_core_subject_to(L: np.ndarray, S, F: GF) -> bool:
    """Generic form: no nonzero vector of rowspace(L) is supported inside S."""
    n = L.shape[1]
    comp = sorted(set(range(n)) - set(S))
    return rank(L[:, comp], F) == rank(L, F)


@dataclass(frozen=True)
class GeneralPositionReport:
    ok: bool
    failing_core: tuple[int, ...] | None
    cores_checked: int
    total_cores: int
    exhaustive: bool
    failures: int = 0


def _count_cores(partition, r: int, k: int) -> int:
    poly = [1]
    for P in partition:
        block = [comb(len(P), j) for j in range(min(r, len(P)) + 1)]
        nxt = [0] * (len(poly) + len(block) - 1)
        for a, ca in enumerate(poly):
            for b, cb in enumerate(block):
                nxt[a + b] += ca * cb
        poly = nxt
    return poly[k] if k < len(poly) else 0


def check_general_position(G: np.ndarray, partition, r: int, k: int, F: GF,
                           L: np.ndarray | None = None,
                           count_failures: bool = False) -> GeneralPositionReport:
    """rank(G|_S) = k for every k-core S of the block partition.

    When L is supplied, Row(G) must lie in its orthogonal complement;
    a violation raises InvalidParams before any enumeration.
    """
    n = G.shape[1]
    if G.shape[0] != k:
        raise InvalidParams(f"G must have k={k} rows")
    if L is not None and np.any(F.matmul(G, L.T)):
        raise InvalidParams("row space of G is not orthogonal to L")
    total = _count_cores(partition, r, k)
    if comb(n, k) > _CORE_CAP:
        raise BudgetExceeded(f"C({n},{k}) subsets exceed the exhaustive cap")
    checked = 0
    failures = 0
    first_fail = None
    for S in combinations(range(n), k):
        if not is_k_core(partition, r, S):
            continue
        checked += 1
        if rank(G[:, S], F) != k:
            failures += 1
            if first_fail is None:
                first_fail = S
            if not count_failures:
                return GeneralPositionReport(False, S, checked, total, True, 1)
    return GeneralPositionReport(failures == 0, first_fail, checked, total, True, failures)


def max_deficient_support(G: np.ndarray, F: GF, n_cap: int = _DEFICIENT_N_CAP):
    """Largest |S| with rank(G|_S) <= k-1, plus a witness set."""
    k, n = G.shape
    if n > n_cap:
        raise BudgetExceeded(f"n={n} exceeds the exhaustive subset cap {n_cap}")
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            if rank(G[:, S], F) <= k - 1:
                return size, tuple(S)
    return 0, ()


def certify_optimality(C: LinearCode, P: LocalityProfile,
                       distance_budget: int = DISTANCE_BUDGET,
                       subspace_budget: int = SUBSPACE_BUDGET,
                       t_columns=None) -> OptimalityCertificate:
    """Measure d against the locality bound and run the structural checks.

    The dual-hierarchy ladder and the r|k structure checks run only when
    their preconditions hold and their enumerations fit the budgets;
    anything not run is reported as skipped, never silently passed.
    """
    details: list[str] = []
    violations = check_profile(C, P, distance_budget)
    profile_valid = not violations
    if not profile_valid:
        details.append("invalid-profile")
        details.extend(violations)
    n, k, r, delta = C.n, C.k, P.r, P.delta
    measured = min_distance(C, distance_budget)
    bound = locality_bound(n, k, r, delta)
    tight = measured == bound
    sound = (measured <= bound) or not profile_valid
    if not sound:
        details.append(f"SOUNDNESS VIOLATION: measured d={measured} exceeds bound {bound}")
    if not profile_valid:
        return OptimalityCertificate(measured, bound, tight, "skipped", "skipped",
                                     tuple(details), False, sound)

    j0 = (-(-k // r) - 1) * (delta - 1)

    def dual_weight_is(level, expected):
        """None when the scan exceeds the budget, else the verdict."""
        try:
            return dual_support_weight_equals(C, level, expected, subspace_budget)
        except BudgetExceeded:
            return None

    if tight and j0 < n - k:
        ladder = "pass"
        for i in range(1, n - k - j0 + 1):
            verdict = dual_weight_is(j0 + i, k + j0 + i)
            if verdict is None:
                ladder = "skipped"
                details.append(f"dual ladder: level {j0 + i} not checkable within budget")
                break
            if not verdict:
                ladder = "fail"
                details.append(f"dual ladder: d_perp[{j0 + i}] != {k + j0 + i}")
                break
    else:
        ladder = "skipped"
        details.append("dual ladder: skipped (code not tight)" if not tight else
                       "dual ladder: skipped (empty range)")

    if tight and k % r == 0 and measured < r + 2 * delta - 1:
        structural = "pass"
        size_exp = r + delta - 1
        seen: set[int] = set()
        for gi, g in enumerate(P.groups):
            S = list(g.support)
            if len(S) != size_exp:
                structural = "fail"
                details.append(f"structure: group {gi} has size {len(S)}, expected {size_exp}")
            if seen & set(S):
                structural = "fail"
                details.append(f"structure: group {gi} overlaps an earlier group")
            seen |= set(S)
            local = puncture(C, S)
            if local.k != r or min_distance(local, distance_budget) != delta:
                structural = "fail"
                details.append(f"structure: group {gi} local code is not [{size_exp}, {r}, {delta}] MDS")
        for i in range(1, delta):
            verdict = dual_weight_is(i, r + i)
            if verdict is None:
                if structural == "pass":
                    structural = "skipped"
                details.append(f"structure: dual weight level {i} not checkable within budget")
                break
            if not verdict:
                structural = "fail"
                details.append(f"structure: d_perp[{i}] != {r + i}")
        if t_columns is not None and structural != "fail":
            T = list(t_columns)
            d = measured
            for gi, g in enumerate(P.groups):
                sub = shorten(C, sorted(set(g.support) | set(T)))
                if sub.n != r + d - 1 or sub.k != r or min_distance(sub, distance_budget) != d:
                    structural = "fail"
                    details.append(f"structure: shortened code at group {gi} is not [{r + d - 1}, {r}, {d}] MDS")
        elif t_columns is None:
            details.append("structure: global-parity shortening check skipped (T unknown)")
    else:
        structural = "not_applicable"

    return OptimalityCertificate(measured, bound, tight, ladder, structural,
                                 tuple(details), True, sound)
