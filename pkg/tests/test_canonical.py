import pytest

from qmatball.action import window_basis
from qmatball.canonical import LEMMAS, check_FG, lemma_check


@pytest.mark.parametrize("lemma", LEMMAS)
def test_lemmas_n2(lemma):
    res = lemma_check(lemma, 2, window_basis(2, 2, 1))
    if lemma != "l_min":  # l_min needs n >= 3
        assert res
    assert [r.as_dict() for r in res if not r.status] == []


def test_result_records_are_serializable():
    (r, *_) = lemma_check("l_2", 2, window_basis(2, 1, 0))
    d = r.as_dict()
    assert d["lemma"] == "l_2" and "status" in d


def test_unknown_lemma():
    with pytest.raises((KeyError, ValueError)):
        lemma_check("nope", 2)


def test_lmin_n3():
    res = lemma_check("l_min", 3, window_basis(3, 2, 1))
    assert res and all(r.status for r in res)


def test_fg_breaks_at_n4():
    bad = [r for r in check_FG(4, kmax=2) if not r.status]
    assert any(tuple(r.indices)[:2] == (1, 4) for r in bad)
