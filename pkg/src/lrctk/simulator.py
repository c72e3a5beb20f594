"""Seeded failure-injection harness over simulated storage nodes.

One symbol per node, one stripe per round.  Failures within a round are
simultaneous and repairs complete before the next round; every repaired
symbol is compared against the ground-truth codeword, so corruption can
never pass silently.  Identical (scenario, seed) gives an identical
report, bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .codes import LinearCode, encode, min_weight_word
from .errors import InvalidParams, InvalidProfile, LrcError
from .locality import LocalityProfile, check_profile
from .repair import ErasurePattern, local_repair, repairability

_REJECTION_CAP = 10000


@dataclass(frozen=True)
class FailureModel:
    """fixed: `count` nodes per round; bernoulli: each node fails with
    exact probability `prob`; adversarial: the support of a minimum-
    weight codeword fails every round."""

    kind: str  # fixed | bernoulli | adversarial
    count: int = 0
    prob: Fraction | None = None
    constrained_per_group: bool = False


@dataclass(frozen=True)
class Scenario:
    code: LinearCode
    profile: LocalityProfile
    rounds: int
    failures: FailureModel
    seed: int
    repair_policy: str = "local-first"  # local-first | global-only


@dataclass
class SimReport:
    rounds_run: int = 0
    repairs_local: int = 0
    repairs_global: int = 0
    data_loss_events: int = 0
    read_degree_histogram: dict = field(default_factory=dict)
    round_log: list = field(default_factory=list)

    def to_dict(self) -> dict:
        """JSON-ready form; coordinates are 1-based."""
        return {
            "rounds_run": self.rounds_run,
            "repairs_local": self.repairs_local,
            "repairs_global": self.repairs_global,
            "data_loss_events": self.data_loss_events,
            "read_degree_histogram": {str(k): v for k, v in sorted(self.read_degree_histogram.items())},
            "rounds": [
                {
                    "round": e["round"],
                    "erased": [c + 1 for c in e["erased"]],
                    "local": e["local"],
                    "global": e["global"],
                    "lost": e["lost"],
                }
                for e in self.round_log
            ],
        }


def _sample_failures(model: FailureModel, rng, n: int, profile: LocalityProfile,
                     adversarial_support=None) -> set:
    if model.kind == "adversarial":
        return set(adversarial_support)
    if model.kind == "bernoulli":
        p = Fraction(model.prob)
        if not 0 <= p <= 1:
            raise InvalidParams(f"probability {p} outside [0, 1]")

        def draw():
            draws = rng.integers(0, p.denominator, size=n)
            return {i for i in range(n) if draws[i] < p.numerator}
    elif model.kind == "fixed":
        if not 0 <= model.count <= n:
            raise InvalidParams(f"failure count {model.count} outside [0, {n}]")

        def draw():
            return set(int(c) for c in rng.choice(n, size=model.count, replace=False))
    else:
        raise InvalidParams(f"unknown failure model {model.kind!r}")
    if not model.constrained_per_group:
        return draw()
    for _ in range(_REJECTION_CAP):
        cand = draw()
        if all(len(cand & set(g.support)) <= profile.delta - 1 for g in profile.groups):
            return cand
    raise InvalidParams("constrained sampler found no pattern within the rejection cap")


def run_scenario(S: Scenario) -> SimReport:
    """Sample failures, classify, repair per policy, verify against truth."""
    if S.rounds < 1:
        raise InvalidParams("rounds must be >= 1")
    if S.repair_policy not in ("local-first", "global-only"):
        raise InvalidParams(f"unknown policy {S.repair_policy!r}")
    violations = check_profile(S.code, S.profile)
    if violations:
        raise InvalidProfile("scenario profile failed verification", violations)
    C, P = S.code, S.profile
    n, k, q = C.n, C.k, C.field.q
    adversarial_support = None
    if S.failures.kind == "adversarial":
        adversarial_support = tuple(int(i) for i in np.nonzero(min_weight_word(C)[1])[0])
    rng = np.random.Generator(np.random.PCG64(S.seed))
    report = SimReport()
    F = C.field
    from .linalg import null_space_basis, rref

    H = null_space_basis(C.G, F)
    for t in range(S.rounds):
        msg = rng.integers(0, q, size=k, dtype=np.int64)
        truth = encode(C, msg)
        erased = _sample_failures(S.failures, rng, n, P, adversarial_support)
        word = [None if i in erased else int(truth[i]) for i in range(n)]
        cls = repairability(C, P, ErasurePattern(frozenset(erased), n))
        n_local = n_global = n_lost = 0
        globally_unique = [c for c in sorted(erased)
                           if cls[c] == "global" or (cls[c] == "local" and S.repair_policy == "global-only")]
        for c in sorted(erased):
            if cls[c] == "local" and S.repair_policy == "local-first":
                rep = local_repair(C, P, word, c)
                if rep.value != int(truth[c]):
                    raise LrcError(f"local repair corrupted coordinate {c + 1}")
                report.read_degree_histogram[rep.symbols_read] = (
                    report.read_degree_histogram.get(rep.symbols_read, 0) + 1)
                n_local += 1
            elif cls[c] == "lost":
                n_lost += 1
        if globally_unique:
            E = sorted(erased)
            known = [i for i in range(n) if i not in erased]
            vals = truth[known]
            b = F.neg(F.matmul(H[:, known], vals[:, None]))[:, 0] if known else np.zeros(H.shape[0], dtype=np.int64)
            aug = np.hstack([H[:, E], b[:, None]])
            R, piv = rref(aug, F)
            x = np.zeros(len(E), dtype=np.int64)
            for ri, pc in enumerate(piv):
                x[pc] = R[ri, -1]
            for c in globally_unique:
                if int(x[E.index(c)]) != int(truth[c]):
                    raise LrcError(f"global repair corrupted coordinate {c + 1}")
                n_global += 1
        report.rounds_run += 1
        report.repairs_local += n_local
        report.repairs_global += n_global
        report.data_loss_events += n_lost
        report.round_log.append({"round": t, "erased": sorted(erased),
                                 "local": n_local, "global": n_global, "lost": n_lost})
        if n_local + n_global + n_lost != len(erased):
            raise LrcError("repair accounting does not cover every erased coordinate")
    return report
