"""Exact arithmetic in GF(q) for prime q and q = 2^m, m <= 16.

Elements are canonical integers in [0, q).  For extension fields the
integer's binary digits are the coefficients of the residue polynomial
over GF(2), lowest degree first (bit i = coefficient of x^i).

Extension-field multiplication goes through log/exp tables built on the
smallest primitive element (by integer encoding).  The default modulus
for each degree is the irreducible polynomial with the smallest integer
encoding, so encodings are reproducible across runs:

    m=2 : x^2+x+1                 -> 0x7
    m=3 : x^3+x+1                 -> 0xb
    m=4 : x^4+x+1                 -> 0x13
    m=8 : x^8+x^4+x^3+x+1         -> 0x11b
    m=16: x^16+x^5+x^3+x+1        -> 0x1002b
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidParams, NotPrimePower, ReducibleModulus

# Smallest irreducible polynomial of each degree over GF(2), integer-encoded.
_DEFAULT_MODULUS = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}

_MAX_PRIME = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 2^64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _poly_mod2(a: int, b: int) -> int:
    """Remainder of GF(2)[x] division of a by b (integer-encoded)."""
    db = b.bit_length() - 1
    while a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _is_irreducible2(c: int, m: int) -> bool:
    """Exhaustive factor check: no divisor of degree 1..m//2."""
    for deg in range(1, m // 2 + 1):
        for d in range(1 << deg, 1 << (deg + 1)):
            if _poly_mod2(c, d) == 0:
                return False
    return True


def _gf2m_mul(a: int, b: int, modulus: int, m: int) -> int:
    """Carry-less multiply mod the irreducible polynomial."""
    p = 0
    while b:
        if b & 1:
            p ^= a
        a <<= 1
        if a & (1 << m):
            a ^= modulus
        b >>= 1
    return p


def _factorize(n: int) -> list[int]:
    """Distinct prime factors of n (trial division, n <= 2^16)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """A finite field GF(q) with scalar and numpy-vectorized operations.

    Values are immutable after construction; all methods are pure.
    """

    def __init__(self, q: int, modulus: tuple[int, ...] = ()):
        self.q = q
        self.modulus = tuple(modulus)
        if modulus:
            self.p = 2
            self.m = len(modulus) - 1
            self._mod_int = sum(c << i for i, c in enumerate(modulus))
            self._build_tables()
        else:
            self.p = q
            self.m = 1
            self._mod_int = 0
            self._exp = None
            self._log = None
            self.generator = None

    def _build_tables(self):
        q = self.q
        factors = _factorize(q - 1)
        gen = None
        for cand in range(2, q):
            if all(self._pow_raw(cand, (q - 1) // f) != 1 for f in factors):
                gen = cand
                break
        if gen is None:  # q == 2 never reaches here; group is cyclic
            raise InvalidParams(f"no primitive element found for q={q}")
        self.generator = gen
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        val = 1
        for i in range(q - 1):
            exp[i] = val
            log[val] = i
            val = _gf2m_mul(val, gen, self._mod_int, self.m)
        exp[q - 1:] = exp[: q - 1]
        log[0] = -(1 << 40)  # poison: any use of log(0) lands out of range
        exp.setflags(write=False)
        log.setflags(write=False)
        self._exp = exp
        self._log = log

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = _gf2m_mul(r, a, self._mod_int, self.m)
            a = _gf2m_mul(a, a, self._mod_int, self.m)
            e >>= 1
        return r

    # -- element-wise operations (scalars or numpy arrays) --

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        return a ^ b

    def sub(self, a, b):
        if self.m == 1:
            return (a - b) % self.p
        return a ^ b

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        return a

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            out = self._exp[np.clip(self._log[a] + self._log[b], 0, 2 * (self.q - 1) - 1)]
            return np.where((a == 0) | (b == 0), 0, out)
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.m == 1:
            return pow(int(a), self.p - 2, self.p)
        return int(self._exp[(self.q - 1) - self._log[a]])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.m == 1:
            return pow(int(a), e, self.p)
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Exact matrix product over the field (no overflow for p < 2^31)."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        inner = A.shape[-1]
        if self.m == 1:
            p = self.p
            if inner * (p - 1) * (p - 1) < (1 << 62):
                return (A @ B) % p
            out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
            for t in range(inner):
                out = (out + A[..., t, None] * B[t]) % p
            return out
        out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
        for t in range(inner):
            out ^= self.mul(A[..., t, None], B[t])
        return out

    def points(self, count: int) -> list[int]:
        """The first ``count`` canonical nonzero evaluation points.

        Prime fields: 1, 2, 3, ...; extension fields: powers of the
        primitive generator.  Distinct for count <= q - 1.
        """
        if count > self.q - 1:
            raise InvalidParams(f"need {count} distinct nonzero points in GF({self.q})")
        if self.m == 1:
            return list(range(1, count + 1))
        return [self.pow(self.generator, i) for i in range(count)]

    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other):
        return isinstance(other, GF) and self.q == other.q and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"


def make_field(q: int, modulus=None) -> GF:
    """Build GF(q) for prime q < 2^31 or q = 2^m with 2 <= m <= 16.

    ``modulus`` is a coefficient list, lowest degree first; extension
    fields default to the smallest irreducible polynomial of the degree.
    Raises NotPrimePower or ReducibleModulus.
    """
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(f"q={q} is not a supported field order")
    if is_prime(q):
        if q >= _MAX_PRIME:
            raise NotPrimePower(f"prime q={q} exceeds the 2^31 support limit")
        if modulus:
            raise InvalidParams("prime fields take no modulus")
        return GF(q)
    m = q.bit_length() - 1
    if q != 1 << m or not (2 <= m <= 16):
        raise NotPrimePower(f"q={q} is neither prime nor 2^m with 2 <= m <= 16")
    if modulus is None:
        enc = _DEFAULT_MODULUS[m]
        coeffs = tuple((enc >> i) & 1 for i in range(m + 1))
    else:
        coeffs = tuple(int(c) for c in modulus)
        if len(coeffs) != m + 1 or coeffs[-1] != 1 or any(c not in (0, 1) for c in coeffs):
            raise ReducibleModulus(f"modulus must be a monic degree-{m} polynomial over GF(2)")
        enc = sum(c << i for i, c in enumerate(coeffs))
    if not _is_irreducible2(enc, m):
        raise ReducibleModulus(f"modulus {coeffs} is reducible over GF(2)")
    return GF(q, coeffs)
