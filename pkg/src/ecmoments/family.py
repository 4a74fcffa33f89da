"""Elliptic-curve families, canonical cubic forms, and applicability checks.

A family can be given in short form y^2 = x^3 + A(T)x + B(T), in general
Weierstrass form y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, or directly
as a cubic form y^2 = c3(t)x^3 + c2(t)x^2 + c1(t)x + c0(t). Point counting
always goes through the cubic form: for odd p the substitution
y -> 2y + a1 x + a3 is a bijection fiberwise, so the Weierstrass solution
count equals that of (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import AllFibersSingular, DegenerateFamily, UnknownFamily
from .poly import PolyZ, PolyZ2, T, ord_at_zero_reversed

Poly = Union[PolyZ, PolyZ2]


@dataclass(frozen=True)
class CubicForm:
    """The fiber at t is the curve y^2 = c3(t)x^3 + c2(t)x^2 + c1(t)x + c0(t)."""

    c3: Poly
    c2: Poly
    c1: Poly
    c0: Poly

    def __post_init__(self):
        if self.c3.is_zero():
            raise DegenerateFamily("leading cubic coefficient is identically zero")

    @property
    def two_param(self) -> bool:
        return isinstance(self.c3, PolyZ2)


@dataclass(frozen=True)
class OneParamFamily:
    """A one-parameter family, with exactly one source form present.

    declared_rank is input metadata (cross-checked only by the first-moment
    estimator, never certified here).
    """

    name: str
    short: Optional[tuple[PolyZ, PolyZ]] = None
    weierstrass: Optional[tuple[PolyZ, PolyZ, PolyZ, PolyZ, PolyZ]] = None
    cubic: Optional[CubicForm] = None
    declared_rank: Optional[int] = None
    description: str = ""

    def __post_init__(self):
        forms = [f for f in (self.short, self.weierstrass, self.cubic) if f is not None]
        if len(forms) != 1:
            raise DegenerateFamily(f"{self.name}: exactly one source form required")
        if discriminant_poly(self).is_zero():
            raise DegenerateFamily(f"{self.name}: discriminant is identically zero")


# Non-degeneracy of two-parameter families is checked by sampling the
# discriminant at random points modulo a 31-bit prime; full bivariate
# resultant machinery is out of scope.
_SAMPLE_PRIME = 2**31 - 1
_SAMPLE_COUNT = 100


@dataclass(frozen=True)
class TwoParamFamily:
    """y^2 = x^3 + C(T,S)x^2 + A(T,S)x + B(T,S) over two parameters."""

    name: str
    A: PolyZ2
    B: PolyZ2
    C: PolyZ2 = field(default_factory=PolyZ2)
    declared_rank: Optional[int] = None
    description: str = ""

    def __post_init__(self):
        rng = random.Random(0)
        cf = self.cubic_form()
        for _ in range(_SAMPLE_COUNT):
            t = rng.randrange(_SAMPLE_PRIME)
            s = rng.randrange(_SAMPLE_PRIME)
            d = _cubic_disc(
                cf.c3(t, s), cf.c2(t, s), cf.c1(t, s), cf.c0(t, s)
            )
            if d % _SAMPLE_PRIME:
                return
        raise DegenerateFamily(f"{self.name}: discriminant vanished at all samples")

    def cubic_form(self) -> CubicForm:
        return CubicForm(PolyZ2.const(1), self.C, self.A, self.B)


@dataclass(frozen=True)
class BirchFamily:
    """Pseudo-family of all short-form curves y^2 = x^3 + ax + b mod p."""

    name: str = "BIRCH"
    description: str = "all curves y^2 = x^3 + ax + b, a,b mod p"


Family = Union[OneParamFamily, TwoParamFamily, BirchFamily]


def _cubic_disc(a: int, b: int, c: int, d: int) -> int:
    """Discriminant of the cubic a x^3 + b x^2 + c x + d."""
    return (
        18 * a * b * c * d
        - 4 * b**3 * d
        + b**2 * c**2
        - 4 * a * c**3
        - 27 * a**2 * d**2
    )


def _weierstrass_model(fam: OneParamFamily) -> tuple[PolyZ, PolyZ, PolyZ, PolyZ, PolyZ]:
    """(a1, a2, a3, a4, a6) of an integral Weierstrass model of the family.

    Cubic forms convert via X = c3 x, Y = c3 y, an isomorphism on every
    fiber with c3(t) invertible mod p.
    """
    if fam.weierstrass is not None:
        return fam.weierstrass
    zero = PolyZ()
    if fam.short is not None:
        A, B = fam.short
        return (zero, zero, zero, A, B)
    cf = fam.cubic
    return (zero, cf.c2, zero, cf.c1 * cf.c3, cf.c0 * cf.c3 * cf.c3)


def _b_invariants(fam: OneParamFamily) -> tuple[PolyZ, PolyZ, PolyZ, PolyZ]:
    a1, a2, a3, a4, a6 = _weierstrass_model(fam)
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def _c_invariants(fam: OneParamFamily) -> tuple[PolyZ, PolyZ]:
    b2, b4, b6, _ = _b_invariants(fam)
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
    return c4, c6


def to_cubic_form(fam: OneParamFamily) -> CubicForm:
    """Canonical counting form: (1, 0, A, B) for short input, (4, b2, 2b4, b6)
    for Weierstrass input, the ingested form for cubic input."""
    if fam.cubic is not None:
        return fam.cubic
    if fam.short is not None:
        A, B = fam.short
        return CubicForm(PolyZ.const(1), PolyZ(), A, B)
    b2, b4, b6, _ = _b_invariants(fam)
    return CubicForm(PolyZ.const(4), b2, 2 * b4, b6)


def discriminant_poly(fam: OneParamFamily) -> PolyZ:
    """The discriminant polynomial Delta(T) of the family."""
    if fam.short is not None:
        A, B = fam.short
        return -16 * (4 * A * A * A + 27 * B * B)
    b2, b4, b6, b8 = _b_invariants(fam)
    return (
        -(b2 * b2 * b8)
        - 8 * (b4 * b4 * b4)
        - 27 * (b6 * b6)
        + 9 * b2 * b4 * b6
    )


def j_is_constant(fam: OneParamFamily) -> bool:
    """Whether j(T) = 1728 c4^3 / Delta is a constant rational function.

    Decided exactly by cross-multiplication: constant iff
    N(T) D(t0) - D(T) N(t0) is the zero polynomial for any t0 with D(t0) != 0.
    """
    c4, _ = _c_invariants(fam)
    delta = discriminant_poly(fam)
    if delta.is_zero():
        raise AllFibersSingular(f"{fam.name}: discriminant identically zero")
    num = c4 * c4 * c4
    t0 = 0
    while delta(t0) == 0:
        t0 += 1
    return (num * delta(t0) - delta * num(t0)).is_zero()


def short_model(fam: OneParamFamily) -> tuple[PolyZ, PolyZ]:
    """An integral short model y^2 = x^3 + A(T)x + B(T) of the family."""
    if fam.short is not None:
        return fam.short
    c4, c6 = _c_invariants(fam)
    return (-27 * c4, -54 * c6)


def is_rational_surface(fam: OneParamFamily) -> bool:
    """Rational-surface criterion on degrees of a short model.

    True iff 0 < max(3 deg A, 2 deg B) < 12, or 3 deg A = 2 deg B = 12 and
    T^12 Delta(1/T) does not vanish at T = 0.
    """
    A, B = short_model(fam)
    m = max(3 * A.degree if A else 0, 2 * B.degree if B else 0)
    if 0 < m < 12:
        return True
    if A.degree == 4 and B.degree == 6:
        delta = -16 * (4 * A * A * A + 27 * B * B)
        return ord_at_zero_reversed(delta) == 0
    return False


# --- built-in registry -----------------------------------------------------

S = PolyZ2.s()
T2 = PolyZ2.t()


def make_s4a(a: int = 0, b: int = 1, c: int = 0, d: int = 1) -> OneParamFamily:
    """y^2 = 4x^3 + a x^2 + b x + c + d t, with d != 0."""
    if d == 0:
        raise DegenerateFamily("S4A requires d != 0")
    return OneParamFamily(
        name="S4A",
        cubic=CubicForm(PolyZ.const(4), PolyZ.const(a), PolyZ.const(b), c + d * T),
        declared_rank=0,
        description=f"y^2 = 4x^3 + {a}x^2 + {b}x + {c} + {d}t (closed-form catalog)",
    )


def make_s4b(m: int = 1, n: int = 1) -> OneParamFamily:
    """y^2 = 4x^3 + (4m+1) x^2 + n t x, with n != 0."""
    if n == 0:
        raise DegenerateFamily("S4B requires n != 0")
    return OneParamFamily(
        name="S4B",
        cubic=CubicForm(PolyZ.const(4), PolyZ.const(4 * m + 1), n * T, PolyZ()),
        declared_rank=0,
        description=f"y^2 = 4x^3 + {4 * m + 1}x^2 + {n}tx (closed-form catalog)",
    )


def _num_r6() -> OneParamFamily:
    q = T * T + 2 * T - PolyZ.const(8916100448256000000 - 1)
    a2 = 33320222208 * T + PolyZ.const(811365140824616222208)
    a4 = (-3206349619200 * T - PolyZ.const(26497490347321493520384)) * q
    a6 = (4299816960000 * T + PolyZ.const(343107594345448813363200)) * (q * q)
    return OneParamFamily(
        name="NUM_R6",
        weierstrass=(PolyZ(), a2, PolyZ(), a4, a6),
        declared_rank=6,
        description=(
            "rank-6 family: a2 = 33320222208t + 811365140824616222208, "
            "a4 = (-3206349619200t - 26497490347321493520384)q, "
            "a6 = (4299816960000t + 343107594345448813363200)q^2, "
            "q = t^2 + 2t - 8916100448255999999"
        ),
    )


def _build_registry() -> dict[str, Family]:
    one = PolyZ.const(1)
    fams: list[Family] = [
        OneParamFamily(
            "T1R1",
            cubic=CubicForm(one, PolyZ.const(-1), PolyZ.const(-1), T),
            declared_rank=0,
            description="Table 1 row 1: y^2 = x^3 - x^2 - x + t",
        ),
        OneParamFamily(
            "T1R2",
            cubic=CubicForm(one, -T, T * T, -(T * T)),
            declared_rank=0,
            description="Table 1 row 2: y^2 = x^3 - tx^2 + (x-1)t^2",
        ),
        OneParamFamily(
            "T1R3",
            cubic=CubicForm(one, T, PolyZ(), T * T),
            declared_rank=1,
            description="Table 1 row 3: y^2 = x^3 + tx^2 + t^2",
        ),
        OneParamFamily(
            "T1R4",
            cubic=CubicForm(one, T, T, T * T),
            declared_rank=1,
            description="Table 1 row 4: y^2 = x^3 + tx^2 + tx + t^2",
        ),
        OneParamFamily(
            "TX1",
            short=(T, one),
            description="generic non-constant-j family y^2 = x^3 + tx + 1",
        ),
        make_s4a(),
        make_s4b(),
        OneParamFamily(
            "S4C",
            cubic=CubicForm(one, PolyZ(), -(T * T), (T * T) * (T * T)),
            declared_rank=2,
            description="y^2 = x^3 - t^2 x + t^4 (closed-form catalog)",
        ),
        OneParamFamily(
            "NUM_R0",
            weierstrass=(one, one, one, one, T),
            declared_rank=0,
            description="rank-0 numeric family a = (1, 1, 1, 1, t)",
        ),
        OneParamFamily(
            "NUM_R1",
            weierstrass=(one, T, PolyZ.const(-1), -T - 1, PolyZ()),
            declared_rank=1,
            description="rank-1 numeric family a = (1, t, -1, -t-1, 0)",
        ),
        OneParamFamily(
            "NUM_R2",
            weierstrass=(one, T, PolyZ.const(-19), -T - 1, PolyZ()),
            declared_rank=2,
            description="rank-2 numeric family a = (1, t, -19, -t-1, 0)",
        ),
        OneParamFamily(
            "NUM_R3",
            weierstrass=(PolyZ(), PolyZ.const(5), PolyZ(), -16 * T * T, 64 * T * T),
            declared_rank=3,
            description="rank-3 numeric family a = (0, 5, 0, -16t^2, 64t^2)",
        ),
        _num_r6(),
        TwoParamFamily(
            "T2R1", A=T2, B=PolyZ2(), C=S,
            description="Table 2 row 1: y^2 = x^3 + tx + sx^2",
        ),
        TwoParamFamily(
            "T2R2", A=T2 * T2, B=S * T2**4,
            description="Table 2 row 2: y^2 = x^3 + t^2 x + s t^4",
        ),
        TwoParamFamily(
            "T2R3", A=-(T2 * T2), B=PolyZ2(), C=S,
            description="Table 2 row 3: y^2 = x^3 + sx^2 - t^2 x",
        ),
        TwoParamFamily(
            "T2R4", A=(T2**3 - T2**2) * S, B=PolyZ2(), C=T2 * T2,
            description="Table 2 row 4: y^2 = x^3 + t^2 x^2 + (t^3 - t^2)sx",
        ),
        TwoParamFamily(
            "T2R5", A=-(S * S - S) * T2 * T2, B=PolyZ2(), C=T2 * T2,
            description="Table 2 row 5: y^2 = x^3 + t^2 x^2 - (s^2 - s)t^2 x",
        ),
        BirchFamily(),
    ]
    return {f.name: f for f in fams}


_REGISTRY = _build_registry()


def builtin_names() -> list[str]:
    return list(_REGISTRY)


def get_family(name: str) -> Family:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownFamily(name) from None
