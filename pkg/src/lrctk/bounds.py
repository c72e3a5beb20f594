"""Closed-form distance bounds for codes with locality.

All evaluators are pure integer/rational arithmetic; the asymptotic
bound returns an exact Fraction, never a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .errors import InvalidParams


@dataclass(frozen=True)
class BoundReport:
    """A named bound value with its echoed inputs."""

    name: str
    value: object  # int or Fraction
    inputs: dict
    tight: bool | None = None

    def to_dict(self) -> dict:
        v = self.value
        out = {
            "name": self.name,
            "value": [v.numerator, v.denominator] if isinstance(v, Fraction) else v,
            "inputs": dict(self.inputs),
        }
        if self.tight is not None:
            out["tight"] = self.tight
        return out


def gopalan_bound(n: int, k: int, r: int) -> int:
    """d <= n - k - ceil(k/r) + 2 for codes with information locality r."""
    if not (1 <= r <= k <= n):
        raise InvalidParams(f"need 1 <= r <= k <= n, got n={n} k={k} r={r}")
    return n - k - ceil(k / r) + 2


def locality_bound(n: int, k: int, r: int, delta: int) -> int:
    """d <= n - k + 1 - (ceil(k/r) - 1)(delta - 1); equals Gopalan at delta=2."""
    if not (1 <= r <= k <= n):
        raise InvalidParams(f"need 1 <= r <= k <= n, got n={n} k={k} r={r}")
    if delta < 2:
        raise InvalidParams(f"delta must be >= 2, got {delta}")
    return n - k + 1 - (ceil(k / r) - 1) * (delta - 1)


def concat_bound(n1: int, k1: int, d1: int, n2: int, k2: int) -> int:
    """Locality bound applied to a concatenated code with r=n1-d1+1, delta=d1."""
    if not (1 <= k1 <= n1 and 1 <= d1 <= n1 and 1 <= k2 <= n2):
        raise InvalidParams("need 1 <= k1 <= n1, 1 <= d1 <= n1, 1 <= k2 <= n2")
    r = n1 - d1 + 1
    return n1 * n2 - k1 * k2 + 1 - (ceil(k1 * k2 / r) - 1) * (d1 - 1)


def concat_classical_bounds(n1: int, d1: int, d2: int) -> tuple[int, int]:
    """d1*d2 <= d <= n1*d2 for a serial concatenation."""
    if n1 < 1 or d1 < 1 or d2 < 1:
        raise InvalidParams("inputs must be positive")
    return d1 * d2, n1 * d2


def asymptotic_concat_bound(R, R1) -> Fraction:
    """Fractional-distance limit 1 - R/R1 for MDS component codes."""
    R, R1 = Fraction(R), Fraction(R1)
    if not (0 < R <= R1 <= 1):
        raise InvalidParams(f"need 0 < R <= R1 <= 1, got R={R} R1={R1}")
    return 1 - R / R1
