from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmatball.equivalence import (
    a_coeff, canonicalize, check_recurrences, detshift_verify, intertwine_verify,
    partner, pole_report, signature_box,
)
from qmatball.scalars import ONE, ParameterPoint, Symbolic
from qmatball.transitions import NotIntegral

half = st.integers(-8, 8).map(lambda x: Fraction(x, 2))


@given(half, st.integers(-5, 5))
def test_canonical_difference_is_zero_or_one(a, m):
    ca, cb, _ = canonicalize(a, a - m)
    assert ca.re - cb.re in (0, 1)


def test_canonicalize_rejects_non_integral_difference():
    with pytest.raises(NotIntegral):
        canonicalize(Fraction(1, 2), 0)


def test_partner_pairs():
    eq = partner(Fraction(-1, 2), Fraction(-3, 2), 2)
    assert eq.as_dict()["members"][0] == ["-1/2", "-3/2"]
    assert len(partner(0, 0, 2).members) == 1


def test_a_zero_is_one():
    qa, qb = Symbolic(0).values()
    assert a_coeff((0, 0), qa, qb) == ONE


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("d", [0, 1])
def test_recurrences(n, d):
    assert check_recurrences(n, d, 3).ok


@pytest.mark.parametrize("d", [0, 1])
def test_poles_integral(d):
    for n in (1, 2):
        assert all(pole_report(k, d).integral for k in signature_box(n, 3))


def test_poles_simple_for_n1_only():
    assert all(pole_report(k, 0).simple for k in signature_box(1, 4))
    r = pole_report((2, 2), 0)
    assert not r.simple
    assert max(m for _, _, m in r.poles) == 2


@pytest.mark.parametrize("n,deg", [(1, 3), (2, 1)])
def test_intertwiner(n, deg):
    assert intertwine_verify(n, 0, deg, 1).ok


@pytest.mark.parametrize("n", [1, 2])
def test_det_shift(n):
    assert detshift_verify(n, 0, 2, 1).ok
    assert not detshift_verify(n, 0, 2, 1, orientation="reverse").ok
