import itertools

import pytest

from symeis.goncharov import (
    coassociativity_defect,
    counit_check,
    delta_g,
    delta_g1,
    normalize_isymbol,
)
from symeis.words import HElem, HTensor, index_word, shuffle


def words_up_to(n):
    for m in range(n + 1):
        for bits in itertools.product("01", repeat=m):
            yield "".join(bits)


def ten(u, v, c=1):
    return HTensor.pure(u, v, c)


def test_normalize_isymbol():
    assert normalize_isymbol("0", "", "1") == HElem.one()
    assert normalize_isymbol("1", "010", "1") == HElem.zero()
    assert normalize_isymbol("0", "10", "1") == HElem.word("10")
    # reversal with sign (-1)^n
    assert normalize_isymbol("1", "10", "0") == HElem.word("01")
    assert normalize_isymbol("1", "100", "0") == HElem({"001": -1})


def test_delta_g_letters():
    assert delta_g("") == ten("", "")
    assert delta_g("0") == ten("0", "") + ten("", "0")
    assert delta_g("1") == ten("1", "") + ten("", "1")


def test_delta_g1_golden_33():
    got = delta_g1(HElem.from_index((3, 3)))
    want = (
        ten(index_word((3, 3)), "")
        + ten(index_word((4,)), index_word((2,)), -6)
        + ten(index_word((3,)), index_word((3,)))
        + ten("", index_word((3, 3)))
    )
    assert got == want


def test_delta_g1_golden_223():
    e = index_word
    f2 = shuffle(HElem.from_index((2,)), HElem.from_index((3,)))
    left_2 = (
        HTensor({(w, e((2,))): 4 * c for w, c in f2.terms.items()})
        + ten(e((2, 3)), e((2,)), 3)
        + ten(e((3, 2)), e((2,)), 2)
    )
    f3 = shuffle(HElem.from_index((2,)), HElem.from_index((2,)))
    left_3 = HTensor(
        {(w, e((3,))): c for w, c in f3.terms.items()}
    ) + ten(e((2, 2)), e((3,)), 2)
    want = (
        ten(e((2, 2, 3)), "")
        + left_2
        + left_3
        + ten(e((3,)), e((2, 2)), 3)
        + ten(e((2,)), e((2, 3)), 4)
        + ten("", e((2, 2, 3)))
    )
    assert delta_g1(HElem.from_index((2, 2, 3))) == want


def test_delta_g1_depth1():
    for k in range(1, 11):
        got = delta_g1(HElem.from_index((k,)))
        e = index_word((k,))
        assert got == ten(e, "") + ten("", e)


def test_delta_g1_depth2_shape():
    # three-block shape: left factors in H1, right factors index words
    for r in range(1, 4):
        for s in range(1, 4):
            t = delta_g1(HElem.from_index((r, s)))
            for u, v in t.terms:
                assert (not u) or u[0] == "1"
                assert (not v) or v[0] == "1"
                assert len(u) + len(v) == r + s


def test_coassociativity_weight5():
    for w in words_up_to(5):
        assert coassociativity_defect(w) == {}, w


def test_homomorphism_weight4():
    ws = list(words_up_to(2))
    for u, v in itertools.product(ws, repeat=2):
        lhs = delta_g(shuffle(HElem.word(u), HElem.word(v)))
        rhs = delta_g(u).mul(delta_g(v))
        assert lhs == rhs, (u, v)


def test_counit():
    for w in words_up_to(5):
        assert counit_check(delta_g(w)) == HElem.word(w)


def test_delta_g1_rejects_non_h1():
    with pytest.raises(ValueError):
        delta_g1("01")
