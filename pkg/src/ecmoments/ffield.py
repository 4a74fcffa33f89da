"""Exact finite-field primitives: primes, Legendre symbols, residue tables.

All arithmetic is exact. Primes 2 and 3 are rejected at type level: every
closed form downstream assumes p > 3, and excluding them here avoids a
thicket of special cases.
"""

from __future__ import annotations

import numpy as np

from .errors import NotPrimeError, ZeroInverse

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
# (covers 64-bit inputs with a wide margin).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2^64."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


class Prime(int):
    """An integer checked to be a prime >= 5."""

    def __new__(cls, value: int) -> "Prime":
        value = int(value)
        if value < 5:
            raise NotPrimeError(f"primes below 5 are excluded, got {value}")
        if not is_prime(value):
            raise NotPrimeError(f"{value} is not prime")
        return super().__new__(cls, value)


def legendre(a: int, p: Prime) -> int:
    """Legendre symbol (a/p) in {-1, 0, +1} via the Jacobi algorithm."""
    a %= p
    if a == 0:
        return 0
    result = 1
    n = int(p)
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result


class ResidueTable:
    """Lookup table chi[x] = (x/p) for x in 0..p-1, stored as int8.

    Built in O(p) by marking the squares; immutable after construction and
    safe to share read-only across workers.
    """

    __slots__ = ("prime", "chi")

    def __init__(self, p: Prime):
        p = Prime(p)
        chi = np.full(p, -1, dtype=np.int8)
        chi[0] = 0
        x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
        chi[x * x % p] = 1
        self.prime = p
        self.chi = chi
        self.chi.setflags(write=False)

    def __getitem__(self, x: int) -> int:
        return int(self.chi[x % self.prime])


def build_residue_table(p: Prime) -> ResidueTable:
    return ResidueTable(p)


def primes_from(min: int, count: int) -> list[Prime]:
    """The first `count` primes >= min (min >= 5), ascending."""
    if min < 5:
        raise ValueError("min must be >= 5")
    if count < 0:
        raise ValueError("count must be >= 0")
    out: list[Prime] = []
    # Sieve in growing windows; the density bound p_n < n(log n + log log n)
    # would do, but doubling the window is simpler and just as fast here.
    lo, width = min, max(1000, 16 * count)
    while len(out) < count:
        hi = lo + width
        sieve = np.ones(hi - lo, dtype=bool)
        for q in range(2, int(hi**0.5) + 1):
            start = max(q * q, (lo + q - 1) // q * q)
            sieve[start - lo :: q] = False
        for n in np.flatnonzero(sieve):
            out.append(Prime(lo + int(n)))
            if len(out) == count:
                break
        lo, width = hi, width * 2
    return out


def mod_inverse(a: int, p: Prime) -> int:
    """b with a*b = 1 mod p; raises ZeroInverse when p | a."""
    a %= p
    if a == 0:
        raise ZeroInverse(f"{a} has no inverse mod {p}")
    return pow(a, -1, int(p))
