"""Weight-truncated noncommutative series in X0, X1 and the Ihara group law.

Coefficients live in a pluggable ring: exact rationals, big complex
numbers, or complex q-series.  Words reuse the "01" string encoding of
the word algebra, so the pairing with word-algebra elements is direct
dictionary lookup.
"""

import math
import random
from fractions import Fraction

import gmpy2

from .goncharov import delta_g
from .qseries import QSeries, gtilde_shuffle
from .words import HElem, eps_map, reg0, shuffle, word_index


class RationalRing:
    exact = True

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def magnitude(self, x):
        return abs(x)

    def compatible(self, other):
        return isinstance(other, RationalRing)


class ComplexRing:
    """gmpy2 complex numbers; arithmetic runs at the ambient precision."""

    exact = False

    def zero(self):
        return gmpy2.mpc(0)

    def one(self):
        return gmpy2.mpc(1)

    def coerce(self, x):
        return gmpy2.mpc(gmpy2.mpq(x))

    def magnitude(self, x):
        return abs(gmpy2.mpc(x))

    def compatible(self, other):
        return isinstance(other, ComplexRing)


class QSeriesRing:
    """Truncated q-series with complex coefficients."""

    exact = False

    def __init__(self, trunc):
        self.trunc = trunc

    def zero(self):
        return QSeries.zero(self.trunc, complex_=True)

    def one(self):
        return QSeries.const(gmpy2.mpc(1), self.trunc)

    def coerce(self, x):
        return QSeries.const(gmpy2.mpc(gmpy2.mpq(x)), self.trunc)

    def magnitude(self, x):
        return x.max_abs()

    def compatible(self, other):
        return isinstance(other, QSeriesRing) and other.trunc == self.trunc


class NCSeries:
    """Series sum_w c_w X_{w}, truncated past total degree `trunc`."""

    __slots__ = ("ring", "trunc", "coeffs")

    def __init__(self, ring, trunc, coeffs=None):
        self.ring = ring
        self.trunc = trunc
        self.coeffs = {}
        if coeffs:
            for w, c in coeffs.items():
                if len(w) <= trunc:
                    self.coeffs[w] = c

    @classmethod
    def one(cls, ring, trunc):
        return cls(ring, trunc, {"": ring.one()})

    @classmethod
    def gen(cls, ring, trunc, letter):
        return cls(ring, trunc, {letter: ring.one()})

    def coeff(self, w):
        return self.coeffs.get(w, self.ring.zero())

    def _check(self, other):
        if self.trunc != other.trunc or not self.ring.compatible(other.ring):
            raise ValueError("truncation or coefficient ring mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return NCSeries(self.ring, self.trunc, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] - c if w in out else -c
        return NCSeries(self.ring, self.trunc, out)

    def __neg__(self):
        return NCSeries(
            self.ring, self.trunc, {w: -c for w, c in self.coeffs.items()}
        )

    def scale(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = self.ring.coerce(scalar)
        return NCSeries(
            self.ring, self.trunc, {w: scalar * c for w, c in self.coeffs.items()}
        )

    def __mul__(self, other):
        """Concatenation product, discarding degree > trunc."""
        self._check(other)
        out = {}
        for u, cu in self.coeffs.items():
            if _is_zero(cu):
                continue
            room = self.trunc - len(u)
            for v, cv in other.coeffs.items():
                if len(v) <= room and not _is_zero(cv):
                    w = u + v
                    p = cu * cv
                    out[w] = out[w] + p if w in out else p
        return NCSeries(self.ring, self.trunc, out)

    def max_deviation(self, other):
        self._check(other)
        words = set(self.coeffs) | set(other.coeffs)
        mags = [self.ring.magnitude(self.coeff(w) - other.coeff(w)) for w in words]
        return max(mags, default=self.ring.magnitude(self.ring.zero()))

    def to_json(self):
        def enc(c):
            if isinstance(c, (int, Fraction)):
                return str(Fraction(c))
            if isinstance(c, QSeries):
                return c.to_json()
            c = gmpy2.mpc(c)
            return [format(c.real, ".36g"), format(c.imag, ".36g")]

        items = sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0]))
        return {
            "trunc": self.trunc,
            "coeffs": [[w, enc(c)] for w, c in items if not _is_zero(c)],
        }

    def __repr__(self):
        n = len(self.coeffs)
        return f"NCSeries(trunc={self.trunc}, {n} stored words)"


def _is_zero(c):
    # note bool(gmpy2.mpc(0)) is True, so compare explicitly
    if isinstance(c, QSeries):
        return all(x == 0 for x in c.coeffs)
    return c == 0


def pair(S, h):
    """<S | h>: linear extension of coefficient extraction."""
    if isinstance(h, str):
        h = HElem.word(h)
    total = S.ring.zero()
    for w, c in h.terms.items():
        if len(w) > S.trunc:
            raise ValueError(f"word {w!r} exceeds truncation {S.trunc}")
        total = total + S.ring.coerce(c) * S.coeff(w)
    return total


def nc_exp(T):
    """exp of a series with no constant term."""
    if not _is_zero(T.coeff("")):
        raise ValueError("exp needs a vanishing constant term")
    out = NCSeries.one(T.ring, T.trunc)
    p = NCSeries.one(T.ring, T.trunc)
    for n in range(1, T.trunc + 1):
        p = p * T
        out = out + p.scale(Fraction(1, math.factorial(n)))
    return out


def series_inverse(S):
    """Concatenation inverse of a series with constant term 1 (geometric)."""
    one = NCSeries.one(S.ring, S.trunc)
    T = S - one
    out = one
    p = one
    for _ in range(S.trunc):
        p = (-T) * p
        out = out + p
    return out


def is_grouplike(S, tol=None):
    """Check <S|u sh v> = <S|u><S|v> for all pairs up to the truncation."""
    if tol is None:
        tol = 0 if S.ring.exact else gmpy2.mpfr(2) ** -40
    if S.ring.magnitude(S.coeff("") - S.ring.one()) > tol:
        return False
    words = [""]
    for n in range(1, S.trunc + 1):
        words.extend("".join(p) for p in _words_of_length(n))
    for i, u in enumerate(words):
        if not u:
            continue
        for v in words[i:]:
            if not v or len(u) + len(v) > S.trunc:
                continue
            lhs = pair(S, shuffle(HElem.word(u), HElem.word(v)))
            rhs = S.coeff(u) * S.coeff(v)
            if S.ring.magnitude(lhs - rhs) > tol:
                return False
    return True


def _words_of_length(n):
    import itertools

    return itertools.product("01", repeat=n)


def antipode(S, check=True, tol=None):
    """Shuffle antipode: reverse each word and attach (-1)^length.

    For group-like S this is the concatenation inverse, which is why the
    input is checked.
    """
    if check and not is_grouplike(S, tol):
        raise ValueError("antipode requires a group-like series")
    out = {}
    for w, c in S.coeffs.items():
        out[w[::-1]] = c if len(w) % 2 == 0 else -c
    return NCSeries(S.ring, S.trunc, out)


def ihara_compose(A, B):
    """A o B = B(X0, A X1 A^{-1}) A."""
    A._check(B)
    ring, W = A.ring, A.trunc
    Ainv = series_inverse(A)
    letter_img = {
        "0": NCSeries.gen(ring, W, "0"),
        "1": A * NCSeries.gen(ring, W, "1") * Ainv,
    }
    needed = set()
    for w in B.coeffs:
        for j in range(len(w) + 1):
            needed.add(w[:j])
    images = {"": NCSeries.one(ring, W)}
    for w in sorted(needed, key=lambda x: (len(x), x)):
        if w:
            images[w] = images[w[:-1]] * letter_img[w[-1]]
    out = NCSeries(ring, W)
    for w, c in B.coeffs.items():
        if not _is_zero(c):
            out = out + images[w].scale(c)
    return out * A


def ihara_inverse(A):
    """The group-like X with A o X = 1, solved degree by degree."""
    ring, W = A.ring, A.trunc
    X = NCSeries.one(ring, W)
    one = NCSeries.one(ring, W)
    for n in range(1, W + 1):
        defect = ihara_compose(A, X) - one
        fix = {}
        for w, c in defect.coeffs.items():
            if len(w) == n and not _is_zero(c):
                fix[w] = -c
        if fix:
            X = X + NCSeries(ring, W, fix)
    return X


def goncharov_vs_ihara(A, B, w):
    """Both sides of <A o B | w> = m(alpha (x) beta) Delta_G(w).

    The left tensor slot of Delta_G pairs with A, the right with B.
    Returns (ihara side, coproduct side).
    """
    lhs = pair(ihara_compose(A, B), w)
    rhs = A.ring.zero()
    for (u, v), c in delta_g(w).terms.items():
        rhs = rhs + A.ring.coerce(c) * (A.coeff(u) * B.coeff(v))
    return lhs, rhs


def random_grouplike(ring, trunc, seed, brackets=6):
    """exp of a random Lie element: guaranteed group-like.

    Every weight up to the truncation gets a nonzero Lie component, so
    the result has no accidentally vanishing coefficient directions.
    """
    rng = random.Random(seed)

    def lie(weight):
        if weight == 1:
            return NCSeries.gen(ring, trunc, rng.choice("01"))
        split = rng.randrange(1, weight)
        a = lie(split)
        b = lie(weight - split)
        return a * b - b * a

    def nonzero_lie(weight):
        while True:
            L = lie(weight)
            if any(not _is_zero(c) for c in L.coeffs.values()):
                return L

    T = NCSeries(ring, trunc)
    for weight in range(1, trunc + 1):
        c = Fraction(rng.randrange(1, 4), rng.randrange(1, 4))
        c *= rng.choice((-1, 1))
        T = T + nonzero_lie(weight).scale(c)
    for _ in range(brackets):
        weight = rng.randrange(1, trunc + 1)
        c = Fraction(rng.randrange(-3, 4), rng.randrange(1, 4))
        if c:
            T = T + lie(weight).scale(c)
    return nc_exp(T)


def phi_shuffle(ctx, trunc):
    """The shuffle associator: <Phi | w> = Z^sh(w), over big complex numbers."""
    from .mzv import mzv_shuffle_reg

    ring = ComplexRing()
    coeffs = {"": ring.one()}
    with ctx.working_context():
        for n in range(1, trunc + 1):
            for p in _words_of_length(n):
                w = "".join(p)
                coeffs[w] = gmpy2.mpc(mzv_shuffle_reg(HElem.word(w), ctx))
    return NCSeries(ring, trunc, coeffs)


def gamma_md(ctx, trunc, N):
    """<Gamma_MD | w> = g^sh(w): multiple divisor sums as complex q-series,
    extended to all words through reg0 (so the X0 coefficient is 0)."""
    ring = QSeriesRing(N)
    coeffs = {"": ring.one()}
    with ctx.working_context():
        tpi = two_pi_i(ctx)
        for n in range(1, trunc + 1):
            for p in _words_of_length(n):
                w = "".join(p)
                acc = ring.zero()
                for u, c in reg0(HElem.word(w)).terms.items():
                    idx = word_index(u)
                    scalar = c * (-tpi) ** sum(idx)
                    acc = acc + gtilde_shuffle(idx, N).scale(scalar)
                coeffs[w] = acc
    return NCSeries(ring, trunc, coeffs)


def two_pi_i(ctx):
    return 2 * gmpy2.mpc(0, ctx.pi)
