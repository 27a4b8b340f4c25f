from hypothesis import given, settings, strategies as st

from qmatball.linalg import CoordSystem, coords_in_span, express, kernel, mat_vec, rank, span_basis
from qmatball.qmatrix import parse_poly
from qmatball.scalars import ONE, U, qint, s_power, scalar

small = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_kernel_vectors_are_annihilated(rows):
    for v in kernel(rows, 3):
        assert all(x.is_zero() for x in mat_vec(rows, v))
    assert rank(rows) + len(kernel(rows, 3)) == 3


def test_kernel_over_function_field():
    M = [[U, s_power(2)], [U * U, U * s_power(2)]]
    (v,) = kernel(M)
    assert all(x.is_zero() for x in mat_vec(M, v))


def test_coords_in_span():
    basis = [[ONE, scalar(0)], [U, ONE]]
    c = coords_in_span([qint(2) + U, ONE], basis)
    assert c[0] == qint(2) and c[1] == ONE
    assert coords_in_span([ONE, scalar(0), ONE], [[ONE, ONE, scalar(0)]]) is None


def test_vector_coordinates():
    a, b = parse_poly("z[1,1]", 2), parse_poly("z[1,2]*det^-1", 2)
    x = a.scale(U) + b
    c = express(x, [a, b])
    assert c == [U, ONE]
    cs = CoordSystem([a, b])
    assert cs.vector(cs.coords(x)) == x
    assert len(span_basis([a, b, a + b])) == 2
