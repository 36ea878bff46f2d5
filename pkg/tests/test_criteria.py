from __future__ import annotations

import pytest
from conftest import partitions
from hypothesis import given

from orbit_gate.criteria import (
    ModelVerdict,
    derivative_bounds,
    ginzburg_rallis_check,
    klyachko_check,
    parabolic_lr_check,
    rs_bessel_compatible,
    shalika_check,
    theta_match,
    theta_max_match,
    whittaker_closure_check,
)
from orbit_gate.errors import InvalidInputError
from orbit_gate.orbits import GroupFamily
from orbit_gate.partitions import (
    Partition,
    dominance_leq,
    is_very_even,
    partitions_of,
    pointwise_sum,
    transpose,
)


def P(*parts):
    return Partition(parts)


def test_verdict_invariant():
    with pytest.raises(ValueError):
        ModelVerdict("Shalika", True, [1])
    with pytest.raises(ValueError):
        ModelVerdict("Shalika", False, [])
    with pytest.raises(ValueError):
        ModelVerdict("NoSuchModel", True, [])
    v = shalika_check(P(3, 1))
    assert v.to_json()["pass"] is False and v.to_json()["failing_indices"]


def test_rankin_selberg_examples():
    assert rs_bessel_compatible(transpose(P(3, 2)), transpose(P(2, 2))).passed
    assert rs_bessel_compatible(P(2, 1), P(2, 1)).passed
    v = rs_bessel_compatible(P(1, 1, 1), P(3))
    assert not v.passed and v.failing_indices == [1]


def test_rankin_selberg_family_validation():
    with pytest.raises(InvalidInputError):
        rs_bessel_compatible(P(2, 1), P(2), GroupFamily.Orth(3), None)
    with pytest.raises(InvalidInputError):
        rs_bessel_compatible(P(2, 1), P(2), model="Zeta")
    v = rs_bessel_compatible(P(3), P(1, 1), GroupFamily.Orth(3), GroupFamily.Sp(2), model="Bessel")
    assert v.model == "Bessel"


@given(partitions(8))
def test_rs_reflexive(parts):
    lam = Partition(parts)
    assert rs_bessel_compatible(lam, lam).passed


def test_derivative_examples():
    assert derivative_bounds(P(2, 1), P(2), "B").passed
    assert derivative_bounds(P(2, 1), P(1, 1), "B").passed
    assert not derivative_bounds(P(3), P(1, 1), "B").passed
    assert derivative_bounds(P(3), P(1, 1), "E").passed
    with pytest.raises(InvalidInputError):
        derivative_bounds(P(1), P(2))
    with pytest.raises(InvalidInputError):
        derivative_bounds(P(2), P(1), "Q")


def test_klyachko_examples():
    assert klyachko_check(P(2, 2), 2, 0).passed
    assert not klyachko_check(P(3, 1), 2, 0).passed
    assert klyachko_check(P(1, 1), 1, 0).passed
    assert klyachko_check(P(3, 2), 2, 1).passed
    with pytest.raises(InvalidInputError):
        klyachko_check(P(3), 1, 0)


def test_shalika_examples():
    assert shalika_check(P(4)).passed
    assert shalika_check(P(2, 2)).passed
    assert not shalika_check(P(3, 1)).passed
    with pytest.raises(InvalidInputError):
        shalika_check(P(3))


def test_shalika_accepts_exactly_very_even():
    for n in range(0, 9, 2):
        for lam in partitions_of(n):
            assert shalika_check(lam).passed == is_very_even(lam)


def test_ginzburg_rallis():
    accepted = {lam for lam in partitions_of(6) if ginzburg_rallis_check(lam).passed}
    assert accepted == {P(6), P(5, 1), P(3, 3)}
    assert not ginzburg_rallis_check(P(4, 2)).passed
    with pytest.raises(InvalidInputError):
        ginzburg_rallis_check(P(4))


def test_theta_match_examples():
    assert theta_match(P(2, 1), P(2, 2)).passed
    assert not theta_match(P(3), P(1, 1, 1)).passed
    assert theta_match(P(2), P(1, 1)).passed


def test_theta_max_match_examples():
    assert theta_max_match(P(2, 1), 3, 5) == P(3, 2)
    # (2,1) also matches 1^3, so the raised-prefix shape is not the maximum here
    assert theta_max_match(P(1, 1, 1), 3, 3) == P(2, 1)
    assert theta_max_match(P(3, 1), 4, 6) == P(4, 2)
    assert theta_max_match(P(2), 2, 5) == P(3, 1, 1)
    with pytest.raises(InvalidInputError):
        theta_max_match(P(2), 2, 1)
    with pytest.raises(InvalidInputError):
        theta_max_match(P(2), 3, 4)


def test_theta_max_match_is_dominance_max_to_6():
    for dv in range(0, 5):
        for dw in range(dv, 7):
            for lam1 in partitions_of(dv):
                matches = [l2 for l2 in partitions_of(dw) if theta_match(lam1, l2).passed]
                top = theta_max_match(lam1, dv, dw)
                assert top in matches
                assert all(dominance_leq(l2, top) for l2 in matches)


def test_parabolic_examples():
    assert parabolic_lr_check(P(2, 2), P(1, 1), P(1, 1)).passed
    assert not parabolic_lr_check(P(4), P(1, 1), P(1, 1)).passed
    with pytest.raises(InvalidInputError):
        parabolic_lr_check(P(4), P(1), P(1))


@given(partitions(5), partitions(5))
def test_parabolic_accepts_pointwise_sum(a, b):
    mu, nu = Partition(a), Partition(b)
    assert parabolic_lr_check(pointwise_sum(mu, nu), mu, nu).passed


def test_whittaker_examples():
    assert whittaker_closure_check(P(2), P(2)).passed
    assert not whittaker_closure_check(P(1, 1), P(2)).passed
    assert whittaker_closure_check(P(3, 1), P(2, 2)).passed
    with pytest.raises(InvalidInputError):
        whittaker_closure_check(P(2), P(1))
