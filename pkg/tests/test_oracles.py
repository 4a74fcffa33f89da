import pytest

from conftest import first_primes, primes_up_to
from ecmoments.errors import OutsideValidity, UnknownOracle
from ecmoments.ffield import Prime, build_residue_table
from ecmoments.oracles import (
    REGISTRY,
    delta_indicator,
    get_oracle,
    make_registry,
    oracle_names,
    oracle_value,
    residual_cubic_sum,
    verify_oracle,
)

ONE_PARAM_ORACLES = [n for n in oracle_names() if not n.startswith(("T2", "BIRCH"))]
TWO_PARAM_ORACLES = [n for n in oracle_names() if n.startswith(("T2", "BIRCH"))]


@pytest.mark.parametrize("name", ONE_PARAM_ORACLES)
def test_one_param_oracle_exact_small(name):
    # exhaustive exactness at small primes; the full 5..300 sweep is in the
    # acceptance suite
    report = verify_oracle(name, primes_up_to(61))
    assert report.rows, name
    assert report.all_equal, report.mismatches()[:3]


@pytest.mark.parametrize("name", TWO_PARAM_ORACLES)
def test_two_param_oracle_exact_small(name):
    report = verify_oracle(name, primes_up_to(31))
    assert report.rows, name
    assert report.all_equal, report.mismatches()[:3]


def test_second_moment_average_sign_negative():
    # Table 1 caption: the largest lower-order term that does not average
    # to zero has a negative average. Checked on the closed forms directly.
    primes = first_primes(300)
    for name in oracle_names():
        oracle = REGISTRY[name]
        if oracle.order != 2:
            continue
        vals = []
        for p in primes:
            if not oracle.valid(p):
                continue
            s2 = oracle.predict(p, build_residue_table(p))
            if name.startswith(("T2", "BIRCH")):
                vals.append((s2 - p**3) / p**2)
            else:
                vals.append((s2 - p**2) / p)
        assert sum(vals) / len(vals) < 0, name


def test_delta_partition():
    for p in first_primes(100):
        assert delta_indicator(1, 4, p) + delta_indicator(3, 4, p) == 1
        assert delta_indicator(1, 12, p) + delta_indicator(5, 12, p) + \
            delta_indicator(7, 12, p) + delta_indicator(11, 12, p) == 1


def test_residual_cubic_sum_matches_scalar():
    from ecmoments.ffield import legendre

    p = Prime(43)
    f = (0, 1, -1, 1)  # x^3 - x^2 + x
    expect = sum(legendre(x**3 - x**2 + x, p) for x in range(p))
    assert residual_cubic_sum(f, p) == expect


def test_empty_prime_list_vacuous():
    report = verify_oracle("T1R1_S2", [])
    assert report.all_equal
    assert report.rows == []


def test_unknown_oracle():
    with pytest.raises(UnknownOracle):
        get_oracle("NOPE")


def test_validity_predicate():
    registry = make_registry(s4a_params=(0, 1, 0, 5))
    oracle = registry["S4A_S2"]
    with pytest.raises(OutsideValidity):
        oracle(Prime(5))  # p divides d = 5
    assert not oracle.valid(5) and oracle.valid(7)


def test_oracle_value_known():
    # Table 1 row 3 at p = 7: S_1 = -p, S_2 = p^2 - 2p - chi(-3)p - 1
    assert oracle_value("T1R3_S1", 7) == -7
    assert oracle_value("T1R3_S2", 7) == 49 - 14 - 7 - 1  # chi(-3) = +1 at p = 7
    assert oracle_value("BIRCH_S2", 5) == 100


def test_registry_enumeration_and_citations():
    assert len(oracle_names()) >= 14
    for name in oracle_names():
        oracle = REGISTRY[name]
        assert oracle.source and oracle.validity
        assert oracle.name == name


def test_parametrized_registry_still_exact():
    registry = make_registry(s4a_params=(1, 2, 3, 4), s4b_params=(2, 5))
    from ecmoments.family import make_s4a, make_s4b

    families = {"S4A": make_s4a(1, 2, 3, 4), "S4B": make_s4b(2, 5)}
    for name in ("S4A_S2", "S4B_S2"):
        report = verify_oracle(name, primes_up_to(37), registry=registry,
                               families=families)
        assert report.rows and report.all_equal, name
