"""Shared brute-force helpers.

These enumerate (x, y) solutions of the original defining equations directly
and never go through the residue-table kernel or the cubic-form conversion,
so they serve as independent oracles for everything the library computes.
"""

from __future__ import annotations

import numpy as np

from ecmoments.family import BirchFamily, OneParamFamily, TwoParamFamily
from ecmoments.ffield import primes_from


def brute_count_weierstrass(a1, a2, a3, a4, a6, p: int) -> int:
    """Affine points of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""
    x = np.arange(p, dtype=np.int64)[:, None]
    y = np.arange(p, dtype=np.int64)[None, :]
    lhs = (y * y + a1 % p * x * y + a3 % p * y) % p
    rhs = (((x + a2 % p) * x + a4 % p) * x + a6 % p) % p
    return int((lhs == rhs).sum())


def brute_count_cubic(c3, c2, c1, c0, p: int) -> int:
    """Affine points of y^2 = c3 x^3 + c2 x^2 + c1 x + c0."""
    x = np.arange(p, dtype=np.int64)[:, None]
    y = np.arange(p, dtype=np.int64)[None, :]
    rhs = ((((c3 % p * x + c2 % p) * x + c1 % p) * x) + c0 % p) % p
    return int((y * y % p == rhs).sum())


def brute_a(fam: OneParamFamily, t: int, p: int) -> int:
    """a_t(p) = p - #affine points of the family's original equation."""
    if fam.weierstrass is not None:
        coeffs = [f(t) for f in fam.weierstrass]
        return p - brute_count_weierstrass(*coeffs, p)
    if fam.short is not None:
        A, B = fam.short
        return p - brute_count_cubic(1, 0, A(t), B(t), p)
    cf = fam.cubic
    return p - brute_count_cubic(cf.c3(t), cf.c2(t), cf.c1(t), cf.c0(t), p)


def brute_moment(fam: OneParamFamily, p: int, r: int) -> int:
    return sum(brute_a(fam, t, p) ** r for t in range(p))


def brute_a2(fam: TwoParamFamily, t: int, s: int, p: int) -> int:
    return p - brute_count_cubic(1, fam.C(t, s), fam.A(t, s), fam.B(t, s), p)


def brute_moment2(fam: TwoParamFamily, p: int, r: int) -> int:
    return sum(
        brute_a2(fam, t, s, p) ** r for t in range(p) for s in range(p)
    )


def brute_birch(p: int, r: int) -> int:
    return sum(
        (p - brute_count_cubic(1, 0, a, b, p)) ** r
        for a in range(p)
        for b in range(p)
    )


def first_primes(n: int):
    return primes_from(5, n)


def primes_up_to(bound: int):
    out = []
    for p in first_primes(max(4, bound)):
        if p > bound:
            break
        out.append(p)
    return out
