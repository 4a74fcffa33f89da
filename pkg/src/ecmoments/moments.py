"""The compute kernel: Dirichlet coefficients by Legendre sums, and raw
moment sums across fibers and primes.

Per prime the residue table is built once and the sweep is a table lookup
per (t, x) pair. Fiber values a_t(p) are small (|a_t| <= p even on singular
fibers), so they are accumulated into an integer histogram and the power
sums S_r are then taken with exact Python ints; numpy only ever handles
quantities bounded by 4p^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from .errors import CapExceeded, OrderMissing
from .family import (
    BirchFamily,
    CubicForm,
    Family,
    OneParamFamily,
    TwoParamFamily,
    to_cubic_form,
)
from .ffield import Prime, ResidueTable, build_residue_table
from .poly import PolyZ, eval_mod, eval_mod_array

MAX_ORDER = 8
TWO_PARAM_CAP = 211

# Cap on the number of (t, x) cells materialized at once by the sweep.
_CHUNK_CELLS = 4_000_000


@dataclass(frozen=True)
class MomentRecord:
    """Exact raw sums S_r = sum over fibers of a^r at a single prime."""

    prime: Prime
    raw_sums: dict[int, int]
    denominator: int  # p for one-parameter, p^2 for two-parameter

    def normalized(self, r: int):
        from fractions import Fraction

        if r not in self.raw_sums:
            raise OrderMissing(r)
        return Fraction(self.raw_sums[r], self.denominator)


@dataclass(frozen=True)
class MomentSeries:
    family: str
    records: list[MomentRecord]
    orders: tuple[int, ...]

    def __post_init__(self):
        primes = [rec.prime for rec in self.records]
        if primes != sorted(set(primes)):
            raise ValueError("records must be strictly ascending by prime")

    def __len__(self) -> int:
        return len(self.records)

    def primes(self) -> list[Prime]:
        return [rec.prime for rec in self.records]

    def raw(self, r: int) -> list[int]:
        return [rec.raw_sums[r] for rec in self.records]


def _check_orders(orders) -> tuple[int, ...]:
    orders = tuple(sorted(set(int(r) for r in orders)))
    if not orders:
        raise ValueError("at least one order required")
    if orders[0] < 1 or orders[-1] > MAX_ORDER:
        raise ValueError(f"orders must lie in 1..{MAX_ORDER}, got {orders}")
    return orders


def a_coeff(cf: CubicForm, t: int, p: Prime, table: ResidueTable) -> int:
    """a_t(p) = -sum over x of chi(c3 x^3 + c2 x^2 + c1 x + c0), scalar path.

    Defined for singular fibers too; the Legendre-sum value always stands in
    for a_t(p) so that sums over all t match the closed forms.
    """
    c3 = eval_mod(cf.c3, t, p)
    c2 = eval_mod(cf.c2, t, p)
    c1 = eval_mod(cf.c1, t, p)
    c0 = eval_mod(cf.c0, t, p)
    chi = table.chi
    total = 0
    for x in range(p):
        g = ((c3 * x + c2) * x + c1) * x + c0
        total += int(chi[g % p])
    return -total


def _a_row(
    c3: np.ndarray, c2: np.ndarray, c1: np.ndarray, c0: np.ndarray,
    p: int, chi: np.ndarray,
) -> np.ndarray:
    """Vectorized a_t for rows of reduced cubic coefficients."""
    x = np.arange(p, dtype=np.int64)
    x2 = x * x % p
    x3 = x2 * x % p
    out = np.empty(len(c3), dtype=np.int64)
    rows = max(1, _CHUNK_CELLS // p)
    for lo in range(0, len(c3), rows):
        hi = min(lo + rows, len(c3))
        g = c3[lo:hi, None] * x3[None, :]
        g += c2[lo:hi, None] * x2[None, :]
        g += c1[lo:hi, None] * x[None, :]
        g += c0[lo:hi, None]
        g %= p
        out[lo:hi] = chi[g].sum(axis=1, dtype=np.int64)
    return -out


def a_values(fam: OneParamFamily, p: Prime, table: ResidueTable | None = None) -> np.ndarray:
    """All fiber coefficients a_t(p), t = 0..p-1, as an int64 array."""
    table = table or build_residue_table(p)
    cf = to_cubic_form(fam)
    t = np.arange(p, dtype=np.int64)
    return _a_row(
        eval_mod_array(cf.c3, t, p),
        eval_mod_array(cf.c2, t, p),
        eval_mod_array(cf.c1, t, p),
        eval_mod_array(cf.c0, t, p),
        int(p),
        table.chi,
    )


def _power_sums_from_counts(counts: np.ndarray, offset: int, orders) -> dict[int, int]:
    sums = {r: 0 for r in orders}
    for idx in np.flatnonzero(counts):
        v = int(idx) - offset
        c = int(counts[idx])
        for r in orders:
            sums[r] += c * v**r
    return sums


def _counts_of(a: np.ndarray, p: int) -> np.ndarray:
    # |a_t| <= p even on fibers where the cubic degenerates to a constant.
    return np.bincount(a + p, minlength=2 * p + 1)


def moment_sums(
    fam: OneParamFamily, p: Prime, orders, table: ResidueTable | None = None
) -> MomentRecord:
    """Exact raw moment sums S_r(p) for a one-parameter family."""
    orders = _check_orders(orders)
    a = a_values(fam, p, table)
    sums = _power_sums_from_counts(_counts_of(a, int(p)), int(p), orders)
    return MomentRecord(prime=Prime(p), raw_sums=sums, denominator=int(p))


def two_param_moment_sums(
    fam: TwoParamFamily,
    p: Prime,
    orders,
    table: ResidueTable | None = None,
    cap: int = TWO_PARAM_CAP,
    override: bool = False,
) -> MomentRecord:
    """S_r = sum over (t, s) mod p of a_{t,s}(p)^r; O(p^3) work."""
    orders = _check_orders(orders)
    p = Prime(p)
    if p > cap and not override:
        raise CapExceeded(f"p={p} above two-parameter cap {cap}")
    table = table or build_residue_table(p)
    cf = fam.cubic_form()
    s = np.arange(p, dtype=np.int64)
    counts = np.zeros(2 * int(p) + 1, dtype=np.int64)
    for t in range(p):
        row = _a_row(
            eval_mod_array(cf.c3.specialize_t(t), s, p),
            eval_mod_array(cf.c2.specialize_t(t), s, p),
            eval_mod_array(cf.c1.specialize_t(t), s, p),
            eval_mod_array(cf.c0.specialize_t(t), s, p),
            int(p),
            table.chi,
        )
        counts += _counts_of(row, int(p))
    sums = _power_sums_from_counts(counts, int(p), orders)
    return MomentRecord(prime=p, raw_sums=sums, denominator=int(p) ** 2)


def birch_all_curves_sum(
    p: Prime,
    r: int,
    table: ResidueTable | None = None,
    cap: int = TWO_PARAM_CAP,
    override: bool = False,
) -> int:
    """Sum of a_{E(a,b)}(p)^r over all curves y^2 = x^3 + ax + b, singular
    ones included."""
    if r not in (1, 2):
        raise ValueError("Birch sums support r in {1, 2}")
    p = Prime(p)
    if p > cap and not override:
        raise CapExceeded(f"p={p} above cap {cap}")
    table = table or build_residue_table(p)
    x = np.arange(p, dtype=np.int64)
    x3 = x * x % p * x % p
    b = np.arange(p, dtype=np.int64)
    total = 0
    for a in range(p):
        base = (x3 + a * x) % p
        g = (base[None, :] + b[:, None]) % p
        avals = -table.chi[g].sum(axis=1, dtype=np.int64)
        total += int((avals**r).sum())
    return total


def _birch_record(p: Prime, orders, cap: int, override: bool) -> MomentRecord:
    sums = {r: birch_all_curves_sum(p, r, cap=cap, override=override) for r in orders}
    return MomentRecord(prime=Prime(p), raw_sums=sums, denominator=int(p) ** 2)


def _one_record(args) -> MomentRecord:
    fam, p, orders, cap, override = args
    if isinstance(fam, BirchFamily):
        return _birch_record(p, orders, cap, override)
    if isinstance(fam, TwoParamFamily):
        return two_param_moment_sums(fam, p, orders, cap=cap, override=override)
    return moment_sums(fam, p, orders)


def moment_series(
    fam: Family,
    primes,
    orders,
    workers: int = 1,
    cap: int = TWO_PARAM_CAP,
    override: bool = False,
) -> MomentSeries:
    """One MomentRecord per prime, ascending; deterministic regardless of
    worker count (work is partitioned by prime, accumulation is exact)."""
    orders = _check_orders(orders)
    primes = [Prime(p) for p in primes]
    jobs = [(fam, p, orders, cap, override) for p in primes]
    try:
        if workers > 1 and len(jobs) > 1:
            with Pool(workers) as pool:
                records = pool.map(_one_record, jobs, chunksize=1)
        else:
            records = [_one_record(j) for j in jobs]
    except CapExceeded as exc:
        raise CapExceeded(f"{exc} (family {fam.name})") from exc
    records.sort(key=lambda rec: rec.prime)
    return MomentSeries(family=fam.name, records=records, orders=orders)


def hasse_bound(p: Prime) -> int:
    return math.isqrt(4 * p)
