import pytest

from qmatball.action import check_relations, twisted, untwisted, window_basis
from qmatball.qmatrix import algebra, LocalizedVector, parse_poly
from qmatball.scalars import Concrete, ParameterPoint, QExp, Symbolic, qint, s_power
from qmatball.uqsl import E, F, K, parse_word


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("mode", [None, Symbolic(0), Symbolic(1)])
def test_relations_hold(n, mode):
    ctx = untwisted(n) if mode is None else twisted(n, mode)
    assert check_relations(ctx, window_basis(n, 2, 1)) == []


def test_relations_at_concrete_point():
    ctx = twisted(2, Concrete(ParameterPoint(-1), ParameterPoint(-2)))
    assert check_relations(ctx, window_basis(2, 2, 1)) == []


@pytest.mark.parametrize("k", range(6))
def test_n1_raising_closed_form(k):
    ctx = twisted(1, Symbolic(0))
    qa, qb = Symbolic(0).values()
    z = algebra(1).z(1, 1)
    got = ctx.act_word(E(1), LocalizedVector(z**k))
    coeff = QExp(k, 0, -1).power(qa, qb) * s_power(-1) * qint(QExp(-k, 0, 1), qa, qb)
    assert got == LocalizedVector(z ** (k + 1)).scale(coeff)


def test_compact_generators_ignore_twist():
    x = parse_poly("z[1,2]*z[2,1]*det^-1", 2)
    for w in ("E1", "F3", "K1"):
        g = parse_word(w)
        assert twisted(2, Symbolic(1)).act_word(g, x) == untwisted(2).act_word(g, x)


def test_det_is_compact_invariant():
    det = LocalizedVector(algebra(2).det())
    ctx = untwisted(2)
    for i in (1, 3):
        assert ctx.act_word(E(i), det).is_zero()
        assert ctx.act_word(F(i), det).is_zero()
        assert ctx.act_word(K(i), det) == det


def test_window_size_grows():
    assert len(window_basis(2, 1, 0)) < len(window_basis(2, 2, 0)) < len(window_basis(2, 2, 1))
