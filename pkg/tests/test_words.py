import itertools
import math
import random
from fractions import Fraction

import pytest

from symeis.words import (
    HElem,
    decompose_h1,
    eps_map,
    index_word,
    reg0,
    shuffle,
    stuffle,
    word_index,
)


def brute_shuffle_words(u, v):
    """Independent oracle: enumerate all interleavings by position choice."""
    out = {}
    n = len(u) + len(v)
    for positions in itertools.combinations(range(n), len(u)):
        w = [None] * n
        ui = iter(u)
        for p in positions:
            w[p] = next(ui)
        vi = iter(v)
        for i in range(n):
            if w[i] is None:
                w[i] = next(vi)
        key = "".join(w)
        out[key] = out.get(key, 0) + 1
    return out


def words_up_to(n):
    for m in range(n + 1):
        for bits in itertools.product("01", repeat=m):
            yield "".join(bits)


def h1_words_up_to(n):
    return [w for w in words_up_to(n) if not w or w[0] == "1"]


def indices_of_weight(k):
    """All compositions of k."""
    if k == 0:
        return [()]
    out = []
    for first in range(1, k + 1):
        for rest in indices_of_weight(k - first):
            out.append((first,) + rest)
    return out


def test_index_word_roundtrip():
    assert index_word(()) == ""
    assert index_word((2,)) == "10"
    assert index_word((2, 3)) == "10100"
    for k in range(7):
        for idx in indices_of_weight(k):
            assert word_index(index_word(idx)) == idx
    with pytest.raises(ValueError):
        word_index("01")
    with pytest.raises(ValueError):
        index_word((0,))


def test_shuffle_small():
    e1 = HElem.word("1")
    e0 = HElem.word("0")
    assert shuffle(e1, e1) == HElem({"11": 2})
    assert shuffle(e0, e1) == HElem({"01": 1, "10": 1})
    # e_(2) sh e_(1) = e_(2,1) + 2 e_(1,2)
    got = shuffle(HElem.from_index((2,)), HElem.from_index((1,)))
    assert got == HElem({index_word((2, 1)): 1, index_word((1, 2)): 2})


def test_shuffle_matches_brute_force():
    rng = random.Random(7)
    for _ in range(60):
        u = "".join(rng.choice("01") for _ in range(rng.randrange(5)))
        v = "".join(rng.choice("01") for _ in range(rng.randrange(5)))
        got = shuffle(HElem.word(u), HElem.word(v))
        assert got == HElem(brute_shuffle_words(u, v))


def test_shuffle_commutative_associative_exhaustive():
    ws = [w for w in words_up_to(3)]
    for u, v in itertools.product(ws, repeat=2):
        a, b = HElem.word(u), HElem.word(v)
        assert shuffle(a, b) == shuffle(b, a)
    for u, v, w in itertools.product([w for w in words_up_to(2)], repeat=3):
        a, b, c = HElem.word(u), HElem.word(v), HElem.word(w)
        assert shuffle(shuffle(a, b), c) == shuffle(a, shuffle(b, c))


def test_shuffle_stuffle_random_weight8():
    rng = random.Random(11)
    idx_pool = [idx for k in range(9) for idx in indices_of_weight(k)]
    for _ in range(40):
        i1 = rng.choice(idx_pool)
        i2 = rng.choice(idx_pool)
        i3 = rng.choice(idx_pool)
        if sum(i1) + sum(i2) + sum(i3) > 8:
            continue
        a, b, c = (HElem.from_index(i) for i in (i1, i2, i3))
        assert stuffle(a, b) == stuffle(b, a)
        assert stuffle(stuffle(a, b), c) == stuffle(a, stuffle(b, c))
        assert shuffle(shuffle(a, b), c) == shuffle(a, shuffle(b, c))


def test_stuffle_examples():
    got = stuffle(HElem.from_index((2,)), HElem.from_index((3,)))
    want = (
        HElem.from_index((2, 3)) + HElem.from_index((3, 2)) + HElem.from_index((5,))
    )
    assert got == want
    k = HElem.from_index((4,))
    assert stuffle(k, HElem.one()) == k
    got = stuffle(HElem.from_index((1,)), HElem.from_index((1,)))
    assert got == 2 * HElem.from_index((1, 1)) + HElem.from_index((2,))
    with pytest.raises(ValueError):
        stuffle(HElem.word("01"), HElem.one())


def reg0_oracle(word):
    """Independent oracle: solve w = sum_j w_j sh e0^{sh j} by elimination
    of the leading-e0 degree, keeping only the constant term w_0."""
    rem = HElem.word(word)
    out = HElem.zero()
    while rem:
        # strip terms by maximal leading-e0 run
        n = max(len(w) - len(w.lstrip("0")) for w in rem.terms)
        if n == 0:
            out = out + rem
            break
        picked = HElem(
            {
                w[n:]: c / math.factorial(n)
                for w, c in rem.terms.items()
                if len(w) - len(w.lstrip("0")) == n
            }
        )
        e0n = HElem.word("0" * n, math.factorial(n))
        rem = rem - shuffle(picked, e0n)
    return out


def test_reg0_examples_and_oracle():
    assert reg0(HElem.word("1")) == HElem.word("1")
    assert reg0(HElem.word("0")) == HElem.zero()
    assert reg0(HElem.word("01")) == HElem({"10": -1})
    for w in words_up_to(6):
        assert reg0(HElem.word(w)) == reg0_oracle(w), w


def test_reg0_is_shuffle_homomorphism():
    ws = list(words_up_to(3))
    for u, v in itertools.product(ws, repeat=2):
        a, b = HElem.word(u), HElem.word(v)
        assert reg0(shuffle(a, b)) == shuffle(reg0(a), reg0(b))


def test_eps_map():
    assert eps_map(HElem.word("1")) == HElem({"1": -1})
    assert eps_map(HElem.word("10")) == HElem.word("01")
    assert eps_map(HElem.word("100")) == HElem({"001": -1})
    for w in words_up_to(5):
        assert eps_map(eps_map(HElem.word(w))) == HElem.word(w)


def test_decompose_h1_examples():
    w0, w1 = decompose_h1(HElem.word("1"))
    assert w0 == HElem.zero() and w1 == HElem.one()
    (only,) = decompose_h1(HElem.from_index((2, 3)))
    assert only == HElem.from_index((2, 3))
    w0, w1 = decompose_h1(HElem.from_index((2, 1)))
    assert w0 == -2 * HElem.from_index((1, 2))
    assert w1 == HElem.from_index((2,))
    with pytest.raises(ValueError):
        decompose_h1(HElem.word("01"))


def test_decompose_h1_roundtrip_weight7():
    e1 = HElem.word("1")
    for w in h1_words_up_to(7):
        comps = decompose_h1(HElem.word(w))
        total = HElem.zero()
        power = HElem.one()
        for i, wi in enumerate(comps):
            assert wi.is_h0()
            if i:
                power = shuffle(power, e1)
            total = total + shuffle(wi, power)
        assert total == HElem.word(w), w
