"""Acceptance gate: one test per criterion, tolerances pinned.

The two full-scale checks (first-1000-prime sweeps) are performance gates
marked `nightly` and deselected by default; run them with `pytest -m nightly`.
"""

import math
import os
import time

import pytest

from conftest import first_primes, primes_up_to
from ecmoments.analysis import (
    bias_series,
    binom_sign_test,
    chebyshev_u,
    group_stats,
    odd_coefficient_series,
    rank_estimate,
)
from ecmoments.family import (
    OneParamFamily,
    builtin_names,
    discriminant_poly,
    get_family,
    j_is_constant,
    to_cubic_form,
)
from ecmoments.ffield import build_residue_table
from ecmoments.moments import a_values, moment_series, two_param_moment_sums
from ecmoments.oracles import REGISTRY, oracle_names, verify_oracle
from ecmoments.poly import eval2_mod, eval_mod

WORKERS = min(8, os.cpu_count() or 1)

ONE_PARAM_ORACLES = sorted(n for n in oracle_names() if not n.startswith(("T2", "BIRCH")))
TWO_PARAM_ORACLES = sorted(n for n in oracle_names() if n.startswith("T2"))
ONE_PARAM_FAMILIES = [
    n for n in builtin_names() if isinstance(get_family(n), OneParamFamily)
]


# --- closed-form exactness -------------------------------------------------


@pytest.mark.parametrize("name", ONE_PARAM_ORACLES)
def test_one_param_oracles_exact_to_300(name):
    report = verify_oracle(name, primes_up_to(300))
    assert report.rows
    assert report.all_equal, f"{name}: {report.mismatches()[:3]}"


@pytest.mark.parametrize("name", TWO_PARAM_ORACLES)
def test_two_param_oracles_exact_to_61(name):
    report = verify_oracle(name, primes_up_to(61))
    assert report.rows
    assert report.all_equal, f"{name}: {report.mismatches()[:3]}"


def test_birch_theorem_exact_to_61():
    for name in ("BIRCH_S2", "BIRCH_S1"):
        report = verify_oracle(name, primes_up_to(61))
        assert report.rows and report.all_equal, name


# --- first moment and rank -------------------------------------------------


def test_first_moment_zero_families():
    primes = first_primes(100)
    s = moment_series(get_family("T1R1"), primes, (1,), workers=WORKERS)
    assert all(v == 0 for v in s.raw(1))
    s = moment_series(get_family("T1R2"), primes, (1,), workers=WORKERS)
    for p, v in zip(s.primes(), s.raw(1)):
        if p % 12 == 1:
            assert v == -2 * p
        elif p % 12 == 7:
            assert v == 2 * p
        else:
            assert v == 0


def test_rank_estimates():
    primes = first_primes(100)
    assert rank_estimate(get_family("T1R1"), primes).estimate == 0.0
    for name in ("T1R3", "T1R4"):
        est = rank_estimate(get_family(name), primes).estimate
        assert 0.85 <= est <= 1.15, (name, est)
    est = rank_estimate(get_family("S4C"), primes).estimate
    assert 1.7 <= est <= 2.3, est


# --- negative bias ---------------------------------------------------------


def test_negative_bias_table1_families():
    primes = first_primes(300)
    for name in ("T1R1", "T1R2", "T1R3", "T1R4"):
        series = moment_series(get_family(name), primes, (2,), workers=WORKERS)
        report = bias_series(series, 2, normalizer="p")
        assert report.mean < 0, (name, report.mean)
        if name == "T1R1":
            assert abs(report.mean - (-2)) <= 0.3, report.mean


# --- Michel / Hasse property suite -----------------------------------------


def test_hasse_bound_all_builtins():
    for name in builtin_names():
        fam = get_family(name)
        if not isinstance(fam, OneParamFamily):
            continue
        delta = discriminant_poly(fam)
        for p in primes_up_to(101):
            a = a_values(fam, p)
            for t in range(p):
                if eval_mod(delta, t, p) != 0:
                    assert int(a[t]) ** 2 <= 4 * p, (name, p, t)


def test_hasse_bound_two_param_builtins():
    from ecmoments.family import TwoParamFamily, _cubic_disc
    from ecmoments.moments import _a_row
    from ecmoments.poly import eval_mod_array
    import numpy as np

    for name in builtin_names():
        fam = get_family(name)
        if not isinstance(fam, TwoParamFamily):
            continue
        cf = fam.cubic_form()
        for p in primes_up_to(61):
            table = build_residue_table(p)
            s = np.arange(p, dtype=np.int64)
            for t in range(p):
                row = _a_row(
                    eval_mod_array(cf.c3.specialize_t(t), s, p),
                    eval_mod_array(cf.c2.specialize_t(t), s, p),
                    eval_mod_array(cf.c1.specialize_t(t), s, p),
                    eval_mod_array(cf.c0.specialize_t(t), s, p),
                    int(p),
                    table.chi,
                )
                for sv in range(p):
                    d = _cubic_disc(1, cf.c2(t, sv), cf.c1(t, sv), cf.c0(t, sv))
                    if d % p != 0:
                        assert int(row[sv]) ** 2 <= 4 * p, (name, p, t, sv)


def test_michel_bound_first_300_primes():
    primes = first_primes(300)
    for name in ONE_PARAM_FAMILIES:
        fam = get_family(name)
        if j_is_constant(fam):
            continue
        series = moment_series(fam, primes, (2,), workers=WORKERS)
        for p, s2 in zip(series.primes(), series.raw(2)):
            assert abs(s2 - p * p) <= 8 * p**1.5, (name, p)


def test_legendre_lemma_exhaustive():
    for p in primes_up_to(31):
        chi = build_residue_table(p).chi
        for a in range(1, p):
            for b in range(p):
                assert sum(int(chi[(a * x + b) % p]) for x in range(p)) == 0
                for c in range(p):
                    s = sum(int(chi[(a * x * x + b * x + c) % p]) for x in range(p))
                    expect = (p - 1) * int(chi[a]) if (b * b - 4 * a * c) % p == 0 \
                        else -int(chi[a])
                    assert s == expect, (p, a, b, c)


# --- higher even moments and sym_k -----------------------------------------


def test_higher_even_moment_s4_bounded():
    series = moment_series(get_family("TX1"), first_primes(50), (4,), workers=WORKERS)
    for p, s4 in zip(series.primes(), series.raw(4)):
        assert abs(s4 - 2 * p**3) / p**2.5 <= 20, p


def test_higher_even_moment_s6_bounded():
    # KNOWN FAILURE at the pinned constant: the exact S_6 values (verified
    # against independent (x, y) enumeration) give a max residual ratio of
    # ~30.08 at p = 67 over the first 50 primes. The O(p^{7/2}) statement
    # holds with a constant of ~31 for this family, not 20.
    series = moment_series(get_family("TX1"), first_primes(50), (6,), workers=WORKERS)
    worst = max(
        abs(s6 - 5 * p**4) / p**3.5 for p, s6 in zip(series.primes(), series.raw(6))
    )
    assert worst <= 20, f"max |S_6 - 5p^4|/p^3.5 = {worst:.2f}"


def test_sym_identities():
    import numpy as np

    ahat = np.linspace(-2, 2, 4001)
    assert np.max(np.abs(chebyshev_u(2, ahat) - (ahat**2 - 1))) < 1e-12
    assert np.max(np.abs(chebyshev_u(3, ahat) - (ahat**3 - 2 * ahat))) < 1e-12


# --- odd-moment conjectures (non-blocking) ---------------------------------


@pytest.mark.xfail(
    strict=False,
    reason="conjectural means, loose tolerance; a miss is a report, not a defect",
)
def test_odd_moment_conjecture_rank_one():
    series = moment_series(get_family("T1R3"), first_primes(200), (3, 5), workers=WORKERS)
    c3 = odd_coefficient_series(series, 3).mean
    c5 = odd_coefficient_series(series, 5).mean
    assert -3.0 <= c3 <= -1.0, c3  # conjectured -2r with r = 1
    assert -7.5 <= c5 <= -2.5, c5  # conjectured -5r


# --- sign test -------------------------------------------------------------


def test_sign_test_quoted_probability():
    assert abs(binom_sign_test(63, 100) - 0.0124) <= 0.0005


# --- nightly performance gates ---------------------------------------------


@pytest.mark.nightly
def test_full_scale_sweep_gate():
    # budget: 30 minutes on 8 workers; scaled linearly for smaller hosts
    budget = 1800 * 8 / WORKERS
    start = time.monotonic()
    series = moment_series(get_family("T1R1"), first_primes(1000), (2,), workers=WORKERS)
    elapsed = time.monotonic() - start
    report = bias_series(series, 2, normalizer="p")
    assert abs(report.mean - (-2)) <= 0.15, report.mean
    assert elapsed <= budget, f"{elapsed:.0f}s over budget {budget:.0f}s"


@pytest.mark.nightly
def test_rank6_sign_split_gate():
    series = moment_series(get_family("NUM_R6"), first_primes(1000), (2,), workers=WORKERS)
    report = group_stats(bias_series(series, 2, normalizer="p32"), 10)
    assert len(report.group_means) == 100
    assert report.n_pos >= 65, (report.n_pos, report.n_neg)
