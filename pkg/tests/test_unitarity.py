from fractions import Fraction

import pytest

from qmatball.scalars import ParameterPoint
from qmatball.unitarity import (
    c_recurrence, classify_series, compare_with_recurrence, default_qsample,
    invariant_form_solve, is_unitary_series, recurrence_constants, reference_point,
)

h = Fraction(1, 2)


@pytest.mark.parametrize(
    "a,b,name",
    [
        (-h, -3 * h, "PrincipalUnitary"),
        (-3 * h, -h, "Complementary"),
        (ParameterPoint(0, 1), ParameterPoint(0, 1), "Strange"),
        (h, h, "NotUnitarizable"),
    ],
)
def test_series_labels(a, b, name):
    assert classify_series(a, b, 2).name == name


@pytest.mark.parametrize("ab,case", [((0, 0), 1), ((0, -1), 2), ((0, -2), 3), ((0, -3), 4)])
def test_integer_cases(ab, case):
    lab = classify_series(*ab, 2)
    assert lab.case == case


def test_principal_constants_are_one():
    nodes = [(1, 0), (0, 0), (0, -1), (1, 1)]
    c = recurrence_constants(-h, -3 * h, 2, nodes, 0.49)
    assert all(abs(v - 1) < 1e-12 for v in c.values())


def test_complementary_constants_positive():
    nodes = [(2, 0), (1, 0), (0, 0), (0, -1), (-1, -2)]
    c = recurrence_constants(-3 * h, -h, 2, nodes, 0.25)
    assert all(v.real > 0 for v in c.values())


def test_sign_violation_gives_negative_constant():
    nodes = [(k1, k2) for k1 in range(-2, 3) for k2 in range(-2, k1 + 1)]
    # (Re alpha + n) Re beta > 0
    c = recurrence_constants(h, h, 2, nodes, 0.25)
    assert any(v.real < 0 for v in c.values())


def test_recurrence_ratio_is_one_on_principal():
    assert abs(c_recurrence((0, 0), 1, -h, -3 * h, 0.25) - 1) < 1e-12


def test_default_qsample_env(monkeypatch):
    monkeypatch.setenv("QMATBALL_QSAMPLE", "9/16")
    assert default_qsample() == Fraction(9, 16)


@pytest.mark.parametrize("a,b", [(-h, -h), (ParameterPoint(0, 1), ParameterPoint(0, 1))])
def test_n1_solver_agrees_with_label(a, b):
    q = Fraction(1, 4)
    form = invariant_form_solve(a, b, 1, q=q)
    assert form.feasible == is_unitary_series(classify_series(a, b, 1))
    ref = invariant_form_solve(*reference_point(a, b, 1), 1, q=q)
    assert compare_with_recurrence(form, ref, a, b, 1, float(q)) < 1e-9


def test_n1_zero_is_not_unitary():
    assert not invariant_form_solve(0, 0, 1, q=Fraction(1, 4)).feasible
