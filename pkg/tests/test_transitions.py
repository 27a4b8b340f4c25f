from fractions import Fraction

import pytest

from qmatball.action import twisted
from qmatball.scalars import ParameterPoint, Symbolic
from qmatball.transitions import (
    NotIntegral, classify, closed_sets_minimal, down_map, fits, is_closed, lattice,
    prop21_evaluate, submodule_enumerate, up_map, window_signatures,
)


@pytest.mark.parametrize("d", [0, 1])
def test_factorization_n2(d):
    ctx = twisted(2, Symbolic(d))
    seen = 0
    for k in window_signatures(2, 2, 1):
        for j in (1, 2):
            for f in (up_map, down_map):
                m = f(k, j, ctx)
                if m.admissible and fits(m.target, 2, 1):
                    seen += 1
                    assert m.coefficient.remainder_u_free and m.coefficient.remainder_nonzero
    assert seen > 10


def test_non_dominant_target_is_not_admissible():
    assert not up_map((1, 1), 2, twisted(2, Symbolic(0))).admissible


# expected (case, simple count, direct sum, finite dimensional) per regime
REGIMES = {(0, 0): (1, 1, False, True), (0, -1): (2, 2, False, False), (0, -2): (3, 3, True, False), (0, -3): (4, 3, False, False)}


@pytest.mark.parametrize("ab,expected", REGIMES.items())
def test_regimes_n2(ab, expected):
    r = classify(*ab, 2)
    assert (r.case, len(r.simples), r.direct_sum, r.finite_dim) == expected


@pytest.mark.parametrize("ab", list(REGIMES))
def test_simples_are_minimal_closed_sets(ab):
    lat = lattice(*ab, 2, 4)
    mins = closed_sets_minimal(lat)
    for p in classify(*ab, 2).simples:
        s = frozenset(k for k in lat.nodes if p(k))
        assert is_closed(set(s), lat)
        assert s in mins


@pytest.mark.parametrize("alpha", [Fraction(1, 2), ParameterPoint(0, 1), ParameterPoint(Fraction(1, 3))])
def test_non_integral_is_irreducible(alpha):
    beta = alpha - 1
    r = classify(alpha, beta, 2)
    assert r.irreducible and [p.text for p in r.simples] == ["all"]
    lat = lattice(alpha, beta, 2, 3)
    assert closed_sets_minimal(lat) == [frozenset(lat.nodes)]


def test_non_integral_difference_rejected():
    with pytest.raises(NotIntegral):
        classify(Fraction(1, 2), 0, 2)


def test_submodule_enumeration_contains_simples():
    found = [s for _, s in submodule_enumerate(0, -2, 2, 3)]
    assert len(found) >= 3


def test_dot_output():
    dot = lattice(0, -1, 2, 2).to_dot()
    assert dot.startswith("digraph") and "->" in dot


@pytest.mark.parametrize("k", [(0, 0), (1, 0), (1, 1), (2, 1)])
@pytest.mark.parametrize("j", [1, 2])
def test_prop21_proportional_with_constant_ratio(k, j):
    r = prop21_evaluate(k, j, twisted(2, Symbolic(0)))
    assert r.proportional
    if r.ratio is not None and not r.expected.is_zero():
        # independent of k and j at n = 2
        assert r.ratio == prop21_evaluate((1, 0), 1, twisted(2, Symbolic(0))).ratio
