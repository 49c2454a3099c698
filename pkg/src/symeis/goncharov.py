"""Coproduct of formal iterated integrals on words over {e0, e1}.

delta_g expands a word w = e_{a_1}..e_{a_n}, read as the formal integral
I(0; a_1..a_n; 1), over all choices of marked positions
0 = i_0 < i_1 < ... < i_k < i_{k+1} = n+1:

    sum  prod_p I(a_{i_p}; a_{i_p+1}..a_{i_{p+1}-1}; a_{i_{p+1}})
         (x)  I(0; a_{i_1}..a_{i_k}; 1)

where the product of the bracketing factors is the shuffle product and
each factor is normalized into the word algebra by:

    I(a; empty; b) = 1
    I(a; w; a)     = 0   for nonempty w
    I(0; w; 1)     = w
    I(1; w; 0)     = eps(w)   (signed reversal)

delta_g1 is (reg0 (x) reg0) . delta_g restricted to H1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .words import HElem, HTensor, _reg0_word, _shuffle_words, eps_map


def normalize_isymbol(a0: str, interior: str, a1: str) -> HElem:
    """Rewrite the formal integral I(a0; interior; a1) into the word algebra."""
    return HElem(_norm_isym(a0, interior, a1))


def _norm_isym(a0: str, interior: str, a1: str) -> dict:
    if not interior:
        return {"": 1}
    if a0 == a1:
        return {}
    if a0 == "0":
        return {interior: 1}
    return {interior[::-1]: -1 if len(interior) % 2 else 1}


@lru_cache(maxsize=None)
def _delta_g_word(w: str) -> tuple:
    """delta_g of a single word as a tuple of ((left, right), coeff) pairs.

    Recursion on the most recent marked position j (j = 0 is always
    marked): either no further marks (closing factor I(a_j; a_{j+1..n}; 1))
    or the next mark sits at position i, contributing the normalized gap
    factor I(a_j; ...; a_i) shuffled into everything produced after i.
    """
    n = len(w)
    letters = "0" + w + "1"  # letters[i] = a_i, with a_0 = 0, a_{n+1} = 1

    memo = {}

    def gather(j: int) -> dict:
        # contributions of marks strictly after position j; the letter at
        # the next mark is prepended to the right word at the call site
        if j in memo:
            return memo[j]
        out = {}
        for u, c in _norm_isym(letters[j], w[j:], "1").items():
            key = (u, "")
            out[key] = out.get(key, 0) + c
        for i in range(j + 1, n + 1):
            piece = _norm_isym(letters[j], w[j:i - 1], letters[i])
            if not piece:
                continue
            for (u2, v2), c2 in gather(i).items():
                v = letters[i] + v2
                for u1, c1 in piece.items():
                    c12 = c1 * c2
                    for u, m in _shuffle_words(u1, u2).items():
                        key = (u, v)
                        out[key] = out.get(key, 0) + c12 * m
        memo[j] = out
        return out

    return tuple(gather(0).items())


def delta_g(arg) -> HTensor:
    """Coproduct, linearly extended; accepts a word string or an HElem."""
    if isinstance(arg, str):
        arg = HElem.word(arg)
    out = {}
    for w, c in arg.terms.items():
        for key, m in _delta_g_word(w):
            out[key] = out.get(key, 0) + c * m
    return HTensor(out)


def delta_g1(arg) -> HTensor:
    """(reg0 (x) reg0) . delta_g on H1."""
    if isinstance(arg, str):
        arg = HElem.word(arg)
    if not arg.is_h1():
        raise ValueError("delta_g1 argument must lie in H1")
    out = {}
    for w, c in arg.terms.items():
        for (u, v), m in _delta_g_word(w):
            cm = c * m
            for u2, mu in _reg0_word(u):
                for v2, mv in _reg0_word(v):
                    key = (u2, v2)
                    out[key] = out.get(key, 0) + cm * mu * mv
    return HTensor(out)


def counit_check(t: HTensor) -> HElem:
    """Apply (coefficient of the empty word (x) id); inverse-checks delta_g."""
    out = {}
    for (u, v), c in t.terms.items():
        if u == "":
            out[v] = out.get(v, 0) + c
    return HElem(out)


def coassociativity_defect(w: str):
    """(delta_g (x) id) . delta_g - (id (x) delta_g) . delta_g on a word.

    Returns a map (word, word, word) -> Fraction; empty means coassociative.
    """
    left = {}
    right = {}
    for (u, v), c in _delta_g_word(w):
        for (u1, u2), cu in _delta_g_word(u):
            key = (u1, u2, v)
            left[key] = left.get(key, 0) + c * cu
        for (v1, v2), cv in _delta_g_word(v):
            key = (u, v1, v2)
            right[key] = right.get(key, 0) + c * cv
    out = {}
    for key in set(left) | set(right):
        d = Fraction(left.get(key, 0) - right.get(key, 0))
        if d:
            out[key] = d
    return out
