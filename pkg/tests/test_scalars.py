from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qmatball.scalars import (
    ONE, U, V, ParameterPoint, QExp, ScalarError, Symbolic, format_scalar,
    parse_scalar, qint, s_power, specialize, to_numeric,
)

exps = st.integers(min_value=-6, max_value=6)


@given(exps, exps)
def test_s_powers_multiply(a, b):
    assert s_power(a) * s_power(b) == s_power(a + b)


@given(exps)
def test_qint_is_odd(k):
    assert qint(-k) == -qint(k)


def test_small_qints():
    assert qint(0).is_zero()
    assert qint(1) == ONE
    # [2] = q + q^-1
    assert qint(2) == s_power(2) + s_power(-2)


@settings(max_examples=30)
@given(exps, exps)
def test_qint_recursion(a, b):
    # [a+b] = q^b [a] + q^-a [b]
    assert qint(a + b) == s_power(2 * b) * qint(a) + s_power(-2 * a) * qint(b)


def test_division_by_zero_raises():
    with pytest.raises((ScalarError, ZeroDivisionError)):
        ONE / qint(0)


def test_conjugation_fixes_real_and_flips_i():
    i = parse_scalar("i")
    assert (i * i) == -ONE
    assert i.conj() == -i
    assert (U + s_power(3)).conj() == U + s_power(3)


def test_symbolic_mode_ties_v_to_u():
    qa, qb = Symbolic(2).values()
    assert qa == U
    assert qb == U * s_power(-4)


def test_strange_parameter_is_minus_i():
    p = ParameterPoint(0, 1)
    assert p.q_value() == -parse_scalar("i")
    with pytest.raises(ValueError):
        ParameterPoint(0, 2)


@pytest.mark.parametrize("text", ["s^2 + s^-2", "(u - 1)/(u + 1)", "3*s*u^-1*v", "i*s - 1/2"])
def test_format_parse_roundtrip(text):
    e = parse_scalar(text)
    assert parse_scalar(format_scalar(e)) == e


def test_specialize_exact_and_float_agree():
    e = qint(QExp(1, 1, 0))  # [alpha + 1]
    exact = specialize(e, Fraction(1, 2), ParameterPoint(Fraction(1, 2)), ParameterPoint(0))
    # q = 1/4, q^{alpha+1} = q^{3/2} = 1/8
    expected = (Fraction(1, 8) - 8) / (Fraction(1, 4) - 4)
    assert exact.constant_value() == expected
    assert to_numeric(e, 0.5, u=0.5, v=1.0) == pytest.approx(float(expected))


def test_depends_on():
    assert (U * V).depends_on("v")
    assert not qint(3).depends_on("u")
