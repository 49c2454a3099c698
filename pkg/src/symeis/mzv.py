"""Arbitrary-precision multiple zeta values.

Admissible values are computed by splitting the iterated-integral
representation at the midpoint of the integration path, which turns
zeta(k) into a finite sum of products of multiple polylogarithms at 1/2.
Those converge geometrically, so a weight-k value at P bits costs about
P + guard terms per factor.

On top of the convergent values sit the shuffle regularization Z^sh
(words are rewritten into the admissible subalgebra first) and the
symmetric combination zeta^{sh,S}.
"""

import threading

import gmpy2

from .words import HElem, decompose_h1, in_h0, index_word, reg0, word_index

# extra bits carried through intermediate arithmetic
GUARD_BITS = 32
# extra terms past the precision target; each term of the 1/2-polylog
# sums is below 2^-n up to a polynomial factor
TAIL_TERMS = 80


class MzvContext:
    """Precision settings plus a cache of evaluated words."""

    def __init__(self, precision=256):
        if precision < 16:
            raise ValueError("precision too small")
        self.precision = precision
        self._cache = {}
        self._lock = threading.Lock()
        with self.working_context():
            self.pi = gmpy2.const_pi()

    def working_context(self):
        return gmpy2.context(precision=self.precision + GUARD_BITS)

    def cached(self, key, compute):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        val = compute()
        with self._lock:
            self._cache.setdefault(key, val)
        return val


def _dual_word(w):
    # path reversal t -> 1-t: reverse the word and swap the letters
    flip = {"0": "1", "1": "0"}
    return "".join(flip[c] for c in reversed(w))


def _polylog_half(ks, terms):
    """Li_{k_1,...,k_d}(1/2) = sum over 0<n_1<...<n_d of 2^-n_d / prod n_i^k_i.

    ks may be any composition (parts >= 1); convergence is geometric.
    """
    if not ks:
        return gmpy2.mpfr(1)
    layer = [gmpy2.mpfr(0)] * (terms + 1)
    for n in range(1, terms + 1):
        layer[n] = gmpy2.mpfr(1) / gmpy2.mpz(n) ** ks[0]
    for k in ks[1:]:
        acc = gmpy2.mpfr(0)
        nxt = [gmpy2.mpfr(0)] * (terms + 1)
        for n in range(1, terms + 1):
            acc += layer[n - 1]
            nxt[n] = acc / gmpy2.mpz(n) ** k
        layer = nxt
    total = gmpy2.mpfr(0)
    half = gmpy2.mpfr(1) / 2
    p = gmpy2.mpfr(1)
    # accumulate from small n; p = 2^-n
    for n in range(1, terms + 1):
        p *= half
        total += layer[n] * p
    return total


def _holder_value(w, terms):
    # I(0; w; 1) split at the path midpoint; both halves become
    # 1/2-polylogs, the upper half after path reversal (signs cancel
    # against the per-letter sign of the flip)
    total = gmpy2.mpfr(0)
    for j in range(len(w) + 1):
        u, v = w[:j], w[j:]
        total += _polylog_half(word_index(u), terms) * _polylog_half(
            word_index(_dual_word(v)), terms
        )
    return total


def mzv(i, ctx):
    """zeta(k_1,...,k_d), last part >= 2, at ctx precision."""
    i = tuple(i)
    if not i or i[-1] < 2 or min(i) < 1:
        raise ValueError(f"non-admissible index {i}")
    w = index_word(i)

    def compute():
        with ctx.working_context():
            return _holder_value(w, ctx.precision + TAIL_TERMS)

    return ctx.cached(("mzv", i), compute)


def mzv_dual_route(i, ctx):
    """Same value through the dual word; cross-check for mzv."""
    i = tuple(i)
    w = _dual_word(index_word(i))
    with ctx.working_context():
        return _holder_value(w, ctx.precision + TAIL_TERMS)


def mzv_direct_oracle(i, M):
    """Truncated nested sum over 0<n_1<...<n_d<=M. Slowly convergent;
    only good for coarse cross-checks."""
    i = tuple(i)
    with gmpy2.context(precision=64):
        layer = [gmpy2.mpfr(0)] * (M + 1)
        for n in range(1, M + 1):
            layer[n] = gmpy2.mpfr(1) / gmpy2.mpz(n) ** i[0]
        for k in i[1:]:
            acc = gmpy2.mpfr(0)
            nxt = [gmpy2.mpfr(0)] * (M + 1)
            for n in range(1, M + 1):
                acc += layer[n - 1]
                nxt[n] = acc / gmpy2.mpz(n) ** k
            layer = nxt
        return sum(layer)


def mzv_word(w, ctx):
    # Z on an admissible word; linear extension handled by callers
    if not w:
        return gmpy2.mpfr(1)
    if not in_h0(w):
        raise ValueError(f"word {w!r} not admissible")
    return mzv(word_index(w), ctx)


def mzv_shuffle_reg(a, ctx):
    """Shuffle-regularized Z^sh on any element of the word algebra.

    Words are first pushed into H^1 by reg0, then the constant term of
    the e_1-decomposition is evaluated; Z^sh(e_0) = Z^sh(e_1) = 0.
    """
    if isinstance(a, str):
        a = HElem.word(a)
    with ctx.working_context():
        total = gmpy2.mpfr(0)
        for w, c in reg0(a).terms.items():
            w0 = decompose_h1(HElem.word(w))[0]
            for u, cu in w0.terms.items():
                total += gmpy2.mpq(c * cu) * mzv_word(u, ctx)
        return total


def mzv_sym(i, ctx):
    """zeta^{sh,S}: sum over splits with alternating tail sign."""
    i = tuple(i)
    d = len(i)
    with ctx.working_context():
        total = gmpy2.mpfr(0)
        for j in range(d + 1):
            head = HElem.from_index(i[:j])
            tail = HElem.from_index(tuple(reversed(i[j:])))
            sign = (-1) ** sum(i[j:])
            total += sign * mzv_shuffle_reg(head, ctx) * mzv_shuffle_reg(tail, ctx)
        return total
