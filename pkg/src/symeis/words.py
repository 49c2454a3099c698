"""Exact word algebra over the two-letter alphabet {e0, e1}.

Words are plain strings over "01" ("10100" stands for e1 e0 e1 e0 e0).
An index (k_1, ..., k_d) of positive integers corresponds to the word
1 0^{k_1-1} ... 1 0^{k_d-1}; such words (empty, or starting with "1")
span the subalgebra H1, and those additionally ending in "0" (or empty)
span H0.

HElem is a finite rational linear combination of words, carrying the
shuffle product, the stuffle product (on H1), the projection reg0
killing e0, the signed reversal eps, and the decomposition of H1 as a
polynomial ring over H0 in the shuffle-power of e1.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache


def index_word(parts) -> str:
    """Word of an index: (2, 3) -> "10100"."""
    parts = tuple(parts)
    for k in parts:
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"index parts must be positive integers, got {k!r}")
    return "".join("1" + "0" * (k - 1) for k in parts)


def word_index(word: str) -> tuple:
    """Partial inverse of index_word; defined on words that are empty or start with '1'."""
    if word and word[0] != "1":
        raise ValueError(f"word {word!r} does not start with e1; not an index word")
    parts = []
    for c in word:
        if c == "1":
            parts.append(1)
        elif c == "0":
            parts[-1] += 1
        else:
            raise ValueError(f"bad letter {c!r} in word {word!r}")
    return tuple(parts)


def in_h1(word: str) -> bool:
    return not word or word[0] == "1"


def in_h0(word: str) -> bool:
    return not word or (word[0] == "1" and word[-1] == "0")


def _word_key(word: str):
    # length-then-lexicographic canonical order
    return (len(word), word)


class HElem:
    """Finite map word -> Fraction with exact linear arithmetic.

    Instances are treated as immutable; all operations return fresh objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                c = Fraction(c)
                if c:
                    c2 = data.get(w, 0) + c
                    if c2:
                        data[w] = c2
                    else:
                        data.pop(w, None)
        self.terms = data

    @classmethod
    def word(cls, w: str, coeff=1) -> "HElem":
        return cls({w: Fraction(coeff)})

    @classmethod
    def from_index(cls, parts, coeff=1) -> "HElem":
        return cls.word(index_word(parts), coeff)

    @classmethod
    def one(cls) -> "HElem":
        return cls.word("")

    @classmethod
    def zero(cls) -> "HElem":
        return cls()

    def coeff(self, w: str) -> Fraction:
        return self.terms.get(w, Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, HElem):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            c2 = out.get(w, 0) + c
            if c2:
                out[w] = c2
            else:
                out.pop(w, None)
        res = HElem()
        res.terms = out
        return res

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        res = HElem()
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        res = HElem()
        if scalar:
            res.terms = {w: scalar * c for w, c in self.terms.items()}
        return res

    __mul__ = __rmul__

    def words(self):
        return sorted(self.terms, key=_word_key)

    def max_weight(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_h1(self) -> bool:
        return all(in_h1(w) for w in self.terms)

    def is_h0(self) -> bool:
        return all(in_h0(w) for w in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in self.words():
            c = self.terms[w]
            bits.append(f"{c}*[{w or '1'}]")
        return " + ".join(bits)

    def to_json(self):
        return [[w, str(self.terms[w])] for w in self.words()]


class HTensor:
    """Finite map (word, word) -> Fraction; target of the coproduct."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                c = Fraction(c)
                if c:
                    c2 = data.get(key, 0) + c
                    if c2:
                        data[key] = c2
                    else:
                        data.pop(key, None)
        self.terms = data

    @classmethod
    def pure(cls, u: str, v: str, coeff=1) -> "HTensor":
        return cls({(u, v): Fraction(coeff)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, HTensor):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            c2 = out.get(key, 0) + c
            if c2:
                out[key] = c2
            else:
                out.pop(key, None)
        res = HTensor()
        res.terms = out
        return res

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        res = HTensor()
        res.terms = {key: -c for key, c in self.terms.items()}
        return res

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        res = HTensor()
        if scalar:
            res.terms = {key: scalar * c for key, c in self.terms.items()}
        return res

    __mul__ = __rmul__

    def mul(self, other: "HTensor") -> "HTensor":
        """Componentwise shuffle product on tensors."""
        out = {}
        for (u1, v1), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                c = c1 * c2
                for u, cu in _shuffle_words(u1, u2).items():
                    for v, cv in _shuffle_words(v1, v2).items():
                        key = (u, v)
                        out[key] = out.get(key, 0) + c * cu * cv
        return HTensor(out)

    def keys_sorted(self):
        return sorted(self.terms, key=lambda k: (_word_key(k[0]), _word_key(k[1])))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for u, v in self.keys_sorted():
            bits.append(f"{self.terms[(u, v)]}*[{u or '1'}|{v or '1'}]")
        return " + ".join(bits)

    def to_json(self):
        return [[u, v, str(self.terms[(u, v)])] for u, v in self.keys_sorted()]


@lru_cache(maxsize=None)
def _shuffle_words(u: str, v: str) -> dict:
    """Integer-coefficient shuffle of two words. Cached; do not mutate the result."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    for w, c in _shuffle_words(u[1:], v).items():
        key = u[0] + w
        out[key] = out.get(key, 0) + c
    for w, c in _shuffle_words(u, v[1:]).items():
        key = v[0] + w
        out[key] = out.get(key, 0) + c
    return out


def shuffle(a: HElem, b: HElem) -> HElem:
    out = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            c = cu * cv
            for w, m in _shuffle_words(u, v).items():
                out[w] = out.get(w, 0) + c * m
    return HElem(out)


@lru_cache(maxsize=None)
def _stuffle_indices(p: tuple, q: tuple) -> dict:
    """Stuffle of two indices, as a map index -> integer coefficient."""
    if not p:
        return {q: 1}
    if not q:
        return {p: 1}
    out = {}
    for head, rest in (
        ((p[0],), _stuffle_indices(p[1:], q)),
        ((q[0],), _stuffle_indices(p, q[1:])),
        ((p[0] + q[0],), _stuffle_indices(p[1:], q[1:])),
    ):
        for idx, c in rest.items():
            key = head + idx
            out[key] = out.get(key, 0) + c
    return out


def stuffle(a: HElem, b: HElem) -> HElem:
    for h in (a, b):
        if not h.is_h1():
            raise ValueError("stuffle arguments must lie in H1 (index words)")
    out = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            c = cu * cv
            for idx, m in _stuffle_indices(word_index(u), word_index(v)).items():
                w = index_word(idx)
                out[w] = out.get(w, 0) + c * m
    return HElem(out)


def _weak_compositions(n: int, d: int):
    """All tuples (l_1..l_d) of nonnegative integers summing to n."""
    if d == 0:
        if n == 0:
            yield ()
        return
    for cuts in itertools.combinations(range(n + d - 1), d - 1):
        prev = -1
        comp = []
        for c in cuts:
            comp.append(c - prev - 1)
            prev = c
        comp.append(n + d - 2 - prev)
        yield tuple(comp)


@lru_cache(maxsize=None)
def _reg0_word(w: str) -> tuple:
    """reg0 of a single word, as a tuple of (word, integer coeff) pairs.

    Closed form: reg0(e0^n e_{k_1..k_d}) = (-1)^n sum over l_1+..+l_d = n
    of prod binom(k_j + l_j - 1, l_j) e_{k+l}; zero for d = 0, n > 0.
    """
    n = 0
    while n < len(w) and w[n] == "0":
        n += 1
    rest = w[n:]
    if not rest:
        return (("", 1),) if n == 0 else ()
    ks = word_index(rest)
    sign = -1 if n % 2 else 1
    out = {}
    for ls in _weak_compositions(n, len(ks)):
        coeff = sign
        for k, l in zip(ks, ls):
            coeff *= math.comb(k + l - 1, l)
        key = index_word(tuple(k + l for k, l in zip(ks, ls)))
        out[key] = out.get(key, 0) + coeff
    return tuple(out.items())


def reg0(a: HElem) -> HElem:
    out = {}
    for w, c in a.terms.items():
        for w2, m in _reg0_word(w):
            out[w2] = out.get(w2, 0) + c * m
    return HElem(out)


def eps_map(a: HElem) -> HElem:
    """Signed reversal: e_{a_1}..e_{a_n} -> (-1)^n e_{a_n}..e_{a_1}."""
    out = {}
    for w, c in a.terms.items():
        key = w[::-1]
        out[key] = out.get(key, 0) + (-c if len(w) % 2 else c)
    return HElem(out)


def _e1_shuffle_power(m: int) -> HElem:
    # e1 shuffled with itself m times equals m! times the concatenation power
    return HElem.word("1" * m, math.factorial(m))


def decompose_h1(a: HElem) -> tuple:
    """Components (w_0, w_1, ...) with a = sum_i w_i sh e1^{sh i}, w_i in H0.

    Computed greedily on the trailing-e1 count: if m is maximal among the
    remaining terms, the words v e1^m with v in H0 arise only from
    w_m sh e1^{sh m}, with multiplicity m!.
    """
    if not a.is_h1():
        raise ValueError("decompose_h1 argument must lie in H1")
    comps = {}
    rem = a
    while rem:
        m = max(len(w) - len(w.rstrip("1")) for w in rem.terms)
        inv = Fraction(1, math.factorial(m))
        picked = {}
        for w, c in rem.terms.items():
            if len(w) - len(w.rstrip("1")) == m:
                picked[w[: len(w) - m]] = c * inv
        wm = HElem(picked)
        if not wm.is_h0():
            raise ValueError("decomposition left H0; input not in H1?")
        comps[m] = wm
        rem = rem - shuffle(wm, _e1_shuffle_power(m))
    if not comps:
        return (HElem.zero(),)
    top = max(comps)
    return tuple(comps.get(i, HElem.zero()) for i in range(top + 1))
