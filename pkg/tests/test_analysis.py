import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import first_primes, primes_up_to
from ecmoments.analysis import (
    BiasReport,
    bias_series,
    binom_sign_test,
    catalan,
    chebyshev_u,
    group_stats,
    main_term,
    michel_residual_series,
    odd_coefficient_series,
    rank_estimate,
    sym_sum,
)
from ecmoments.errors import OrderMissing
from ecmoments.family import get_family
from ecmoments.ffield import Prime, legendre
from ecmoments.moments import MomentRecord, MomentSeries, moment_series, moment_sums


def _synthetic_series(raws: dict[int, dict[int, int]], two_param=False) -> MomentSeries:
    orders = tuple(sorted(next(iter(raws.values()))))
    records = [
        MomentRecord(Prime(p), sums, p * p if two_param else p)
        for p, sums in sorted(raws.items())
    ]
    return MomentSeries("SYN", records, orders)


def test_catalan():
    assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]
    with pytest.raises(ValueError):
        catalan(31)
    with pytest.raises(ValueError):
        catalan(-1)


def test_main_term():
    p = 101
    assert main_term(2, p) == p**2
    assert main_term(4, p) == 2 * p**3
    assert main_term(6, p) == 5 * p**4
    assert main_term(8, p) == 14 * p**5
    assert main_term(3, p) == 0
    assert main_term(2, p, two_param=True) == p**3
    with pytest.raises(OrderMissing):
        main_term(4, p, two_param=True)


def test_bias_series_t1r1_closed_form():
    # (S_2 - p^2)/p = -2 - chi(-3) exactly, from the row-1 closed form
    series = moment_series(get_family("T1R1"), first_primes(50), (2,))
    report = bias_series(series, 2)
    assert report.normalizer == "p"
    for p, v in zip(report.primes, report.values):
        assert v == -2 - legendre(-3, Prime(p))
    assert -3 < report.mean < -1


def test_bias_series_birch_exact_minus_one():
    series = moment_series(get_family("BIRCH"), primes_up_to(31), (2,))
    report = bias_series(series, 2)
    assert report.two_param_convention
    assert report.normalizer == "p2"
    assert all(v == -1.0 for v in report.values)
    assert all(f == Fraction(-1) for f in report.values_int_norm)


def test_bias_series_empty():
    series = MomentSeries("EMPTY", [], (2,))
    report = bias_series(series, 2)
    assert report.values == [] and report.mean is None


def test_bias_auto_picks_half_exponent_when_unbounded():
    primes = first_primes(40)
    raws = {int(p): {2: 4 * p * p} for p in primes}  # residual 3p^2, unbounded at scale p
    report = bias_series(_synthetic_series(raws), 2)
    assert report.auto_decision["unbounded"]
    assert report.normalizer == "p32"
    assert report.values == report.values_half_norm


def test_bias_auto_agrees_with_explicit():
    series = moment_series(get_family("T1R1"), first_primes(40), (2,))
    auto = bias_series(series, 2, "auto")
    explicit = bias_series(series, 2, auto.normalizer)
    assert auto.values == explicit.values


def test_bias_series_rejects():
    series = moment_series(get_family("T1R1"), first_primes(8), (2,))
    with pytest.raises(ValueError):
        bias_series(series, 3)
    with pytest.raises(OrderMissing):
        bias_series(series, 4)
    with pytest.raises(ValueError):
        bias_series(series, 2, "p52")
    with pytest.raises(ValueError):
        bias_series(series, 2, "bogus")


def test_odd_coefficients_rank_one():
    # S_1 = -p identically for Table 1 row 3, so c_1 = -1 everywhere
    series = moment_series(get_family("T1R3"), first_primes(30), (1,))
    report = odd_coefficient_series(series, 1)
    assert all(v == -1.0 for v in report.values)
    assert report.mean == -1.0
    with pytest.raises(ValueError):
        odd_coefficient_series(series, 2)


def test_binom_sign_test_values():
    assert abs(binom_sign_test(63, 100) - 0.0124) < 0.0005
    assert binom_sign_test(50, 100) == 1.0
    assert binom_sign_test(100, 100) == pytest.approx(2 * 2**-100.0)
    assert binom_sign_test(0, 0) == 1.0
    with pytest.raises(ValueError):
        binom_sign_test(5, 4)


@given(st.integers(0, 200), st.integers(0, 200))
def test_binom_sign_test_symmetry(a, n):
    if a <= n:
        assert binom_sign_test(a, n) == binom_sign_test(n - a, n)


def test_group_stats_shapes():
    series = moment_series(get_family("T1R1"), first_primes(100), (2,))
    report = group_stats(bias_series(series, 2), 10)
    assert report.group_size == 10
    assert len(report.group_means) == 10
    assert report.n_pos + report.n_neg + report.n_zero == 10
    assert len(report.hist_counts) >= 10
    assert len(report.hist_edges) == len(report.hist_counts) + 1
    assert sum(report.hist_counts) == 10
    assert report.sign_test_p is not None
    # no partial group dropped: mean of all = weighted mean of group means
    assert report.mean == pytest.approx(
        sum(report.group_means) / len(report.group_means)
    )


def test_group_stats_oversized_group():
    series = moment_series(get_family("T1R1"), first_primes(5), (2,))
    report = group_stats(bias_series(series, 2), 50)
    assert report.group_means == [] and report.sign_test_p is None
    with pytest.raises(ValueError):
        group_stats(bias_series(series, 2), 0)


def test_chebyshev_identities():
    ahat = np.linspace(-2, 2, 2001)
    u2 = chebyshev_u(2, ahat)
    u3 = chebyshev_u(3, ahat)
    assert np.max(np.abs(u2 - (ahat**2 - 1))) < 1e-12
    assert np.max(np.abs(u3 - (ahat**3 - 2 * ahat))) < 1e-12
    for k in range(7):
        assert np.max(np.abs(chebyshev_u(k, ahat))) <= k + 1 + 1e-9


def test_sym_sum_low_orders():
    fam = get_family("T1R1")
    for p in primes_up_to(31):
        rec = moment_sums(fam, p, (1, 2))
        s1 = sym_sum(fam, p, 1)
        s2 = sym_sum(fam, p, 2)
        assert s1.total == pytest.approx(rec.raw_sums[1] / math.sqrt(p), abs=1e-9)
        assert s2.total == pytest.approx((rec.raw_sums[2] - p * p) / p, abs=1e-9)
        assert s2.normalized == pytest.approx(s2.total / math.sqrt(p))
    with pytest.raises(ValueError):
        sym_sum(fam, Prime(7), 7)


def test_rank_estimate():
    assert rank_estimate(get_family("T1R1"), first_primes(50)).estimate == 0.0
    est = rank_estimate(get_family("T1R3"), first_primes(100))
    assert 0.85 <= est.estimate <= 1.15
    assert est.rational_surface and est.warning is None
    assert est.primes_used == 100
    empty = rank_estimate(get_family("T1R1"), [])
    assert empty.estimate == 0.0 and empty.primes_used == 0


def test_rank_estimate_warns_off_surface():
    from ecmoments.family import OneParamFamily
    from ecmoments.poly import PolyZ, T

    big = OneParamFamily("BIG", short=(T**5, PolyZ.const(1)))
    est = rank_estimate(big, first_primes(5))
    assert not est.rational_surface
    assert "not known to apply" in est.warning


def test_michel_residuals():
    series = moment_series(get_family("T1R1"), first_primes(50), (2,))
    res = michel_residual_series(series)
    # row-1 closed form has no p^{3/2} term: residuals stay bounded
    assert all(abs(v) <= 4 for v in res.values)
    assert len(res.running_mean) == 50
    assert res.running_mean[0] == res.values[0]
    assert res.reference == pytest.approx(1 / math.sqrt(50))
    empty = michel_residual_series(MomentSeries("E", [], (2,)))
    assert empty.values == [] and empty.reference is None
