"""Exact big-integer polynomials in one and two variables.

Univariate polynomials are dense (they are all low degree); bivariate ones
are sparse term maps. Coefficients are unbounded Python ints: the rank-6
built-in family has constants near 8.1e20.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .errors import DegreeTooLarge, ZeroPolynomial
from .ffield import Prime


class PolyZ:
    """Dense univariate polynomial over Z; coeffs[i] is the T^i coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, v: int) -> "PolyZ":
        return cls((v,))

    @classmethod
    def x(cls) -> "PolyZ":
        """The monomial T."""
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyZ) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "PolyZ":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyZ(
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> "PolyZ":
        return PolyZ(-c for c in self.coeffs)

    def __sub__(self, other) -> "PolyZ":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "PolyZ":
        return _as_poly(other) - self

    def __mul__(self, other) -> "PolyZ":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return PolyZ()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyZ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyZ":
        if n < 0:
            raise ValueError("exponent must be >= 0")
        result = PolyZ.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, t: int) -> int:
        """Exact evaluation at an integer."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __repr__(self) -> str:
        return f"PolyZ({list(self.coeffs)})"


def _as_poly(v) -> PolyZ:
    if isinstance(v, PolyZ):
        return v
    if isinstance(v, int):
        return PolyZ.const(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to PolyZ")


T = PolyZ.x()


def eval_mod(f: PolyZ, t: int, p: Prime) -> int:
    """f(t) mod p by Horner, each coefficient reduced mod p first."""
    acc = 0
    t %= p
    for c in reversed(f.coeffs):
        acc = (acc * t + c) % p
    return acc


def eval_mod_array(f: PolyZ, t: np.ndarray, p: int) -> np.ndarray:
    """Vectorized Horner over an int64 array of already-reduced t values.

    Intermediate products are < p^2, so int64 is safe for p < 3e9.
    """
    acc = np.zeros_like(t)
    for c in reversed(f.coeffs):
        acc = (acc * t + c % p) % p
    return acc


class PolyZ2:
    """Sparse bivariate polynomial over Z; terms map (exp_t, exp_s) -> coeff."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] = ()):
        d = {}
        for (et, es), c in dict(terms).items():
            c = int(c)
            if c:
                d[(int(et), int(es))] = c
        self.terms = dict(sorted(d.items()))

    @classmethod
    def const(cls, v: int) -> "PolyZ2":
        return cls({(0, 0): v})

    @classmethod
    def t(cls) -> "PolyZ2":
        return cls({(1, 0): 1})

    @classmethod
    def s(cls) -> "PolyZ2":
        return cls({(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyZ2) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __add__(self, other) -> "PolyZ2":
        other = _as_poly2(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, 0) + c
        return PolyZ2(d)

    __radd__ = __add__

    def __neg__(self) -> "PolyZ2":
        return PolyZ2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "PolyZ2":
        return self + (-_as_poly2(other))

    def __rsub__(self, other) -> "PolyZ2":
        return _as_poly2(other) - self

    def __mul__(self, other) -> "PolyZ2":
        other = _as_poly2(other)
        d: dict[tuple[int, int], int] = {}
        for (et1, es1), c1 in self.terms.items():
            for (et2, es2), c2 in other.terms.items():
                k = (et1 + et2, es1 + es2)
                d[k] = d.get(k, 0) + c1 * c2
        return PolyZ2(d)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyZ2":
        if n < 0:
            raise ValueError("exponent must be >= 0")
        result = PolyZ2.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, t: int, s: int) -> int:
        return sum(c * t**et * s**es for (et, es), c in self.terms.items())

    def specialize_t(self, t: int) -> PolyZ:
        """Substitute T = t, returning an exact univariate polynomial in S."""
        max_es = max((es for (_, es) in self.terms), default=-1)
        out = [0] * (max_es + 1)
        for (et, es), c in self.terms.items():
            out[es] += c * t**et
        return PolyZ(out)

    def __repr__(self) -> str:
        return f"PolyZ2({self.terms})"


def _as_poly2(v) -> PolyZ2:
    if isinstance(v, PolyZ2):
        return v
    if isinstance(v, int):
        return PolyZ2.const(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to PolyZ2")


def eval2_mod(f: PolyZ2, t: int, s: int, p: Prime) -> int:
    """f(t, s) mod p."""
    t %= p
    s %= p
    acc = 0
    for (et, es), c in f.terms.items():
        acc = (acc + (c % p) * pow(t, et, p) * pow(s, es, p)) % p
    return acc


def ord_at_zero_reversed(delta: PolyZ) -> int:
    """Order of vanishing at T = 0 of T^12 * delta(1/T): 12 - deg(delta)."""
    if delta.is_zero():
        raise ZeroPolynomial("order undefined for the zero polynomial")
    if delta.degree > 12:
        raise DegreeTooLarge(f"degree {delta.degree} exceeds 12")
    return 12 - delta.degree
