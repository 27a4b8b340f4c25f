import pytest

from qmatball.uqsl import (
    E, F, K, Kinv, WordParseError, antipode, coproduct, counit, defining_relations,
    format_uword, generators, parse_word, star,
)


def test_parse_and_format_roundtrip():
    for text in ["E2*F1", "K1*E3", "E1^2*F2"]:
        w = parse_word(text)
        assert parse_word(format_uword(w)) == w


def test_k_times_inverse_cancels():
    assert K(2) * Kinv(2) == parse_word("1")


@pytest.mark.parametrize("bad", ["E", "E1*", "X3", "E1^"])
def test_parse_errors(bad):
    with pytest.raises(WordParseError):
        parse_word(bad)


def test_generator_count():
    # E, F, K, K^-1 for each of the 2n - 1 nodes
    assert len(generators(2)) == 4 * 3


@pytest.mark.parametrize("n", [1, 2])
def test_star_is_an_involution(n):
    for g in generators(n):
        assert star(star(g, n), n) == g


def test_counit_and_antipode():
    assert counit(E(1)).is_zero()
    assert counit(K(1)).is_one()
    assert antipode(K(1)) == Kinv(1)


def test_coproduct_of_k_is_grouplike():
    ((left, right), c), = coproduct(K(1)).items()
    assert left == right == (("K", 1),)
    assert c.is_one()


def test_coproduct_of_e():
    assert set(coproduct(E(1))) == {((("E", 1),), ()), ((("K", 1),), (("E", 1),))}


def test_relation_names_cover_serre():
    names = {name for name, _ in defining_relations(2)}
    assert any(n.startswith("serre") for n in names)
