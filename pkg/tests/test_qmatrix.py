from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qmatball.qmatrix import (
    LocalizedVector, PolyParseError, algebra, check_confluence, graded_dimension,
    overlap_ambiguities, parse_poly, q_minor,
)
from qmatball.scalars import s_power


@pytest.mark.parametrize("n", [2, 3])
def test_overlaps_resolve(n):
    assert overlap_ambiguities(n)
    assert check_confluence(n) == []


@pytest.mark.parametrize("n,j", [(2, j) for j in range(5)] + [(3, j) for j in range(4)])
def test_graded_dimension(n, j):
    assert graded_dimension(n, j) == comb(n * n + j - 1, j)


def test_q_commutation_in_a_row():
    A = algebra(2)
    # z11 z12 = q z12 z11
    assert A.z(1, 2) * A.z(1, 1) == (A.z(1, 1) * A.z(1, 2)).scale(s_power(-2))


def test_det_is_central():
    A = algebra(2)
    det = A.det()
    for a in (1, 2):
        for b in (1, 2):
            assert det * A.z(a, b) == A.z(a, b) * det


def test_q_minor_of_full_size_is_det():
    A = algebra(3)
    assert q_minor(3, (1, 2, 3), (1, 2, 3)) == A.det()


def test_parse_det_inverse():
    x = parse_poly("det^-1", 2)
    assert x.d == 1
    assert (x * LocalizedVector(algebra(2).det())).reduce() == parse_poly("1", 2)


def test_parse_product_is_normal_formed():
    a = parse_poly("z[2,2]*z[1,1]", 2)
    b = parse_poly("z[1,1]*z[2,2]", 2)
    assert a != b
    assert parse_poly(str(a), 2) == a


@pytest.mark.parametrize("bad", ["z[3,1]", "z[1,1]*", "det^x", "((z[1,1]"])
def test_parse_errors(bad):
    with pytest.raises(PolyParseError):
        parse_poly(bad, 2)


idx = st.tuples(st.integers(1, 2), st.integers(1, 2))


@settings(max_examples=25, deadline=None)
@given(st.lists(idx, min_size=1, max_size=4), st.lists(idx, min_size=1, max_size=3))
def test_multiplication_is_associative(w1, w2):
    A = algebra(2)
    p = A.const()
    for a, b in w1:
        p = p * A.z(a, b)
    r = A.const()
    for a, b in w2:
        r = r * A.z(a, b)
    m = A.z(2, 1)
    assert (p * r) * m == p * (r * m)
