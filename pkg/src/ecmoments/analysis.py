"""Statistical pipeline: bias normalization, group statistics, sign tests,
Chebyshev-recursion sums, higher-moment residuals, and the first-moment
rank estimator."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import OrderMissing
from .family import OneParamFamily, is_rational_surface
from .ffield import Prime, ResidueTable
from .moments import MomentSeries, a_values, moment_sums

# Auto-normalizer heuristic: pick the half-integer exponent iff the residual
# scaled by the integer exponent looks unbounded across the series.
_AUTO_RATIO = 3.0
_AUTO_ABS = 25.0


def catalan(n: int) -> int:
    """Exact n-th Catalan number, n <= 30."""
    if not 0 <= n <= 30:
        raise ValueError("n must be in 0..30")
    return math.comb(2 * n, n) // (n + 1)


def main_term(r: int, p: int, two_param: bool = False) -> int:
    """Leading term of the raw sum S_r(p).

    Even orders 2m carry Catalan coefficients: S_2m ~ C_m p^(m+1) for
    one-parameter families. For two-parameter series only r = 2 has an
    agreed main term, p^3 (a convention, not a theorem). Odd orders have a
    fluctuating main term and are handled by coefficient estimation instead.
    """
    if r % 2 == 1:
        return 0
    if two_param:
        if r != 2:
            raise OrderMissing(f"no two-parameter main term for order {r}")
        return p**3
    m = r // 2
    return catalan(m) * p ** (m + 1)


_EXPONENT_TOKENS = {
    "p": Fraction(1),
    "p32": Fraction(3, 2),
    "p2": Fraction(2),
    "p52": Fraction(5, 2),
    "p3": Fraction(3),
    "p72": Fraction(7, 2),
}


def _exponent_pair(r: int, two_param: bool) -> tuple[Fraction, Fraction]:
    """(integer exponent, half-integer exponent) for the residual of S_r."""
    base = Fraction(r, 2) + (1 if two_param else 0)
    return base, base + Fraction(1, 2)


@dataclass(frozen=True)
class BiasReport:
    """Per-prime bias values plus (after group_stats) group statistics."""

    family: str
    order: int
    normalizer: str  # exponent token of the chosen normalization
    primes: list[int]
    values: list[float]  # chosen normalization
    values_int_norm: list[Fraction]  # residual / p^(integer exponent), exact
    values_half_norm: list[float]  # residual / p^(half-integer exponent)
    main_terms: list[int]
    residuals: list[int]
    mean: Optional[float]
    auto_decision: Optional[dict] = None
    two_param_convention: bool = False
    group_size: Optional[int] = None
    group_means: list[float] = field(default_factory=list)
    group_signs: list[int] = field(default_factory=list)
    n_pos: int = 0
    n_neg: int = 0
    n_zero: int = 0
    sign_test_p: Optional[float] = None
    hist_edges: list[float] = field(default_factory=list)
    hist_counts: list[int] = field(default_factory=list)


def _token_for(e: Fraction) -> str:
    for tok, v in _EXPONENT_TOKENS.items():
        if v == e:
            return tok
    return f"p^{e}"


def bias_series(series: MomentSeries, r: int, normalizer: str = "auto") -> BiasReport:
    """Residual (S_r - main term) normalized by a power of p, per prime.

    Mode "auto" keeps the integer exponent unless the residual at that scale
    is unbounded over the series (max over the last quartile exceeding 3x
    the max over the first quartile and an absolute threshold of 25); both
    normalizations are always recorded.
    """
    if r % 2 == 1:
        raise ValueError("bias_series handles even orders; see odd_coefficient_series")
    if r not in series.orders:
        raise OrderMissing(r)
    two_param = any(rec.denominator == rec.prime**2 for rec in series.records)
    e_int, e_half = _exponent_pair(r, two_param)
    primes = [int(p) for p in series.primes()]
    mains = [main_term(r, p, two_param) for p in primes]
    residuals = [s - m for s, m in zip(series.raw(r), mains)]
    vals_int = [Fraction(res, p ** int(e_int)) for res, p in zip(residuals, primes)]
    vals_half = [res / p ** float(e_half) for res, p in zip(residuals, primes)]

    auto = None
    if normalizer == "auto":
        chosen = e_int
        if len(vals_int) >= 4:
            mags = [abs(float(v)) for v in vals_int]
            q = len(mags) // 4
            first, last = max(mags[:q]), max(mags[-q:])
            unbounded = last > _AUTO_RATIO * first and last > _AUTO_ABS
            auto = {
                "first_quartile_max": first,
                "last_quartile_max": last,
                "ratio_threshold": _AUTO_RATIO,
                "abs_threshold": _AUTO_ABS,
                "unbounded": unbounded,
            }
            if unbounded:
                chosen = e_half
        e = chosen
    else:
        try:
            e = _EXPONENT_TOKENS[normalizer]
        except KeyError:
            raise ValueError(f"unknown normalizer {normalizer!r}") from None
        if e not in (e_int, e_half):
            raise ValueError(
                f"normalizer {normalizer} not applicable to order {r}: "
                f"expected exponent {e_int} or {e_half}"
            )

    if e == e_int:
        values = [float(v) for v in vals_int]
    else:
        values = list(vals_half)
    return BiasReport(
        family=series.family,
        order=r,
        normalizer=_token_for(e),
        primes=primes,
        values=values,
        values_int_norm=vals_int,
        values_half_norm=vals_half,
        main_terms=mains,
        residuals=residuals,
        mean=math.fsum(values) / len(values) if values else None,
        auto_decision=auto,
        two_param_convention=two_param,
    )


@dataclass(frozen=True)
class OddCoefficientReport:
    """Per-prime leading coefficient estimates c_r(p) for odd r and their mean."""

    family: str
    order: int
    primes: list[int]
    values: list[float]
    mean: Optional[float]


def odd_coefficient_series(series: MomentSeries, r: int) -> OddCoefficientReport:
    """c_r(p) = S_r / p^((r+3)/2) for r in {3, 5, 7}; c_1(p) = S_1 / p."""
    if r not in (1, 3, 5, 7):
        raise ValueError("odd orders only")
    if r not in series.orders:
        raise OrderMissing(r)
    primes = [int(p) for p in series.primes()]
    exp = 1 if r == 1 else Fraction(r + 3, 2)
    values = [s / p ** float(exp) for s, p in zip(series.raw(r), primes)]
    return OddCoefficientReport(
        family=series.family,
        order=r,
        primes=primes,
        values=values,
        mean=math.fsum(values) / len(values) if values else None,
    )


def binom_sign_test(n_pos: int, n: int) -> float:
    """Exact two-sided tail of Binomial(n, 1/2), clamped to <= 1."""
    if not 0 <= n_pos <= n <= 10000:
        raise ValueError("need 0 <= n_pos <= n <= 10000")
    if n == 0:
        return 1.0
    m = max(n_pos, n - n_pos)
    tail = sum(math.comb(n, k) for k in range(m, n + 1))
    prob = 2 * Fraction(tail, 2**n)
    return float(min(prob, 1))


def group_stats(report: BiasReport, group_size: int) -> BiasReport:
    """Fill group means, signs, sign counts, sign-test tail and histogram.

    Trailing partial group dropped. Histogram bins by Freedman-Diaconis,
    clamped to at least 10 bins, recorded so downstream plots can reuse
    them verbatim.
    """
    if group_size < 1:
        raise ValueError("group_size must be >= 1")
    n_groups = len(report.values) // group_size
    means = [
        math.fsum(report.values[i * group_size : (i + 1) * group_size]) / group_size
        for i in range(n_groups)
    ]
    signs = [0 if m == 0 else (1 if m > 0 else -1) for m in means]
    n_pos = signs.count(1)
    n_neg = signs.count(-1)
    edges: list[float] = []
    counts: list[int] = []
    if means:
        arr = np.asarray(means)
        iqr = float(np.subtract(*np.percentile(arr, [75, 25])))
        span = float(arr.max() - arr.min())
        if iqr > 0 and span > 0:
            nbins = max(10, math.ceil(span / (2 * iqr / len(arr) ** (1 / 3))))
        else:
            nbins = 10
        hist, bin_edges = np.histogram(arr, bins=nbins)
        edges = [float(v) for v in bin_edges]
        counts = [int(v) for v in hist]
    return replace(
        report,
        group_size=group_size,
        group_means=means,
        group_signs=signs,
        n_pos=n_pos,
        n_neg=n_neg,
        n_zero=signs.count(0),
        sign_test_p=binom_sign_test(n_pos, n_pos + n_neg) if (n_pos + n_neg) else None,
        hist_edges=edges,
        hist_counts=counts,
    )


@dataclass(frozen=True)
class SymSum:
    """Chebyshev-recursion sum over fibers for one (prime, k)."""

    prime: int
    k: int
    total: float
    normalized: float  # total / sqrt(p)


def chebyshev_u(k: int, ahat: np.ndarray) -> np.ndarray:
    """U_k of the normalized coefficient via U_k = ahat*U_{k-1} - U_{k-2}."""
    u_prev = np.ones_like(ahat)
    if k == 0:
        return u_prev
    u = ahat.copy()
    for _ in range(k - 1):
        u, u_prev = ahat * u - u_prev, u
    return u


def sym_sum(
    fam: OneParamFamily, p: Prime, k: int, table: ResidueTable | None = None
) -> SymSum:
    """Sum over t of U_k(a_t(p)/sqrt(p)); bounded by O(sqrt(p)) per fiber
    sweep when j is non-constant."""
    if not 1 <= k <= 6:
        raise ValueError("k must be in 1..6")
    ahat = a_values(fam, p, table) / math.sqrt(p)
    total = float(chebyshev_u(k, ahat).sum())
    return SymSum(prime=int(p), k=k, total=total, normalized=total / math.sqrt(p))


@dataclass(frozen=True)
class RankEstimate:
    estimate: float
    primes_used: int
    rational_surface: bool
    warning: Optional[str] = None


def rank_estimate(fam: OneParamFamily, primes) -> RankEstimate:
    """R(x) = (1/x) * sum over p <= x of (-S_1(p)/p) log p, x the largest
    prime used. A family with S_1/p identically -r estimates r, since
    sum of log p up to x ~ x."""
    primes = sorted(Prime(p) for p in primes)
    if not primes:
        return RankEstimate(0.0, 0, is_rational_surface(fam))
    terms = []
    for p in primes:
        s1 = moment_sums(fam, p, (1,)).raw_sums[1]
        terms.append(-s1 / p * math.log(p))
    estimate = math.fsum(terms) / primes[-1]
    rational = is_rational_surface(fam)
    warning = None if rational else "not a rational surface: rank formula not known to apply"
    return RankEstimate(estimate, len(primes), rational, warning)


@dataclass(frozen=True)
class MichelResiduals:
    family: str
    primes: list[int]
    values: list[float]  # (S_2 - p^2) / p^(3/2)
    running_mean: list[float]
    reference: Optional[float]  # square-root-cancellation scale 1/sqrt(N)


def michel_residual_series(series: MomentSeries) -> MichelResiduals:
    """Residual (S_2 - p^2)/p^(3/2) with running mean and the 1/sqrt(N)
    square-root-cancellation reference."""
    if 2 not in series.orders:
        raise OrderMissing(2)
    primes = [int(p) for p in series.primes()]
    values = [(s - p * p) / p**1.5 for s, p in zip(series.raw(2), primes)]
    running, acc = [], 0.0
    for i, v in enumerate(values, start=1):
        acc += v
        running.append(acc / i)
    n = len(values)
    return MichelResiduals(
        family=series.family,
        primes=primes,
        values=values,
        running_mean=running,
        reference=1 / math.sqrt(n) if n else None,
    )
