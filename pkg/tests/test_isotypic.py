from itertools import product

import pytest

from qmatball.action import twisted, untwisted
from qmatball.isotypic import (
    component_basis, component_coordinates, decompose, is_dominant, project,
    signature_weight, signatures, vh_vector, weyl_dimension,
)
from qmatball.qmatrix import parse_poly
from qmatball.scalars import Symbolic
from qmatball.uqsl import E


def test_weyl_dimensions():
    assert weyl_dimension((0, 0)) == 1
    assert weyl_dimension((2, 0)) == 3
    assert weyl_dimension((1, 0, 0)) == 3
    assert weyl_dimension((2, 1, 0)) == 8


def test_grade_two_splits_nine_plus_one():
    dims = sorted(c.dimension for c in decompose(2, 2, 0))
    assert dims == [1, 9]


@pytest.mark.parametrize("grade,d", [(j, d) for d in (0, 1) for j in range(-2 * d, 4 - 2 * d)])
def test_decomposition_signatures(grade, d):
    comps = decompose(2, grade, d)
    assert sorted(c.signature for c in comps) == sorted(signatures(2, grade, d))
    for c in comps:
        assert c.dimension == weyl_dimension(c.signature) ** 2


@pytest.mark.parametrize("k", [k for k in product(range(2, -3, -1), repeat=2) if is_dominant(k)])
def test_highest_vectors(k):
    v = vh_vector(k)
    ctx = twisted(2, Symbolic(1))
    for i in (1, 3):
        assert ctx.act_word(E(i), v).is_zero()
    assert ctx.weight_of(v) == signature_weight(k, 1)


def test_projection_splits_a_vector():
    x = parse_poly("z[1,1]*z[2,2]", 2)
    parts = component_coordinates(x)
    assert set(parts) <= {(2, 0), (1, 1)}
    total = None
    for part in parts.values():
        total = part if total is None else total + part
    assert total == x
    assert project(project(x, (1, 1)), (1, 1)) == project(x, (1, 1))


def test_component_is_compact_stable():
    basis = component_basis((1, 0))
    ctx = untwisted(2)
    for b in basis:
        y = ctx.act_word(E(1), b)
        assert project(y, (1, 0)) == y
