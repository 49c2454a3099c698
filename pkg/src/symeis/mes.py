"""Shuffle-regularized multiple Eisenstein series G^sh and their
symmetric combinations G^{sh,S}.

The symbolic layer records the exact decomposition of G^sh into MZV
symbols times multiple-divisor-sum indices (driven by the reduced
coproduct); the numeric layer evaluates it as a complex q-series.  All
numeric series here are normalized: Gt = G / (2pi i)^weight.
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import gmpy2

from .goncharov import delta_g1
from .ihara import (
    NCSeries,
    QSeriesRing,
    gamma_md,
    ihara_compose,
    pair,
    phi_shuffle,
    series_inverse,
    two_pi_i,
)
from .mzv import mzv_shuffle_reg
from .qseries import QSeries, gtilde_shuffle
from .words import HElem, index_word, reg0, word_index


class SymbolicMES:
    """Exact shape of G^sh: sum of coeff * zeta^sh(w) * g^sh_l terms.

    Terms are keyed by (MZV word, divisor-sum index); either part may be
    empty.  Weight homogeneous by construction.
    """

    __slots__ = ("index", "weight", "terms")

    def __init__(self, index, terms):
        self.index = tuple(index)
        self.weight = sum(self.index)
        self.terms = dict(terms)
        for (w, l), c in self.terms.items():
            if len(w) + sum(l) != self.weight:
                raise ValueError("terms must be weight homogeneous")

    def items_sorted(self):
        return sorted(
            self.terms.items(), key=lambda t: (len(t[0][0]), t[0][0], t[0][1])
        )

    def to_json(self):
        out = []
        for (w, l), c in self.items_sorted():
            out.append(
                {
                    "coeff": str(c),
                    "zeta": list(word_index(w)),
                    "g": list(l),
                }
            )
        return {"index": list(self.index), "weight": self.weight, "terms": out}

    def __repr__(self):
        bits = []
        for (w, l), c in self.items_sorted():
            z = f"Z({','.join(map(str, word_index(w)))})" if w else ""
            g = f"g({','.join(map(str, l))})" if l else ""
            body = "*".join(x for x in (z, g) if x) or "1"
            bits.append(f"{c}*{body}")
        return " + ".join(bits) or "0"


def mes_symbolic(index):
    """Split G^sh along the reduced coproduct: left factors stay MZV
    symbols, right factors become divisor-sum indices."""
    index = tuple(index)
    if not index:
        raise ValueError("empty index")
    terms = {}
    for (u, v), c in delta_g1(HElem.from_index(index)).terms.items():
        key = (u, word_index(v))
        terms[key] = terms.get(key, Fraction(0)) + c
    return SymbolicMES(index, terms)


class MesSeries:
    """Numeric q-series of fixed weight; always the normalized variant."""

    __slots__ = ("series", "weight", "index")

    def __init__(self, series, weight, index=None):
        self.series = series
        self.weight = weight
        self.index = tuple(index) if index is not None else None

    def __add__(self, other):
        if self.weight != other.weight:
            raise ValueError("weight mismatch")
        return MesSeries(self.series + other.series, self.weight)

    def __sub__(self, other):
        if self.weight != other.weight:
            raise ValueError("weight mismatch")
        return MesSeries(self.series - other.series, self.weight)

    def __neg__(self):
        return MesSeries(-self.series, self.weight)

    def scale(self, scalar):
        return MesSeries(self.series.scale(scalar), self.weight)

    __rmul__ = scale

    def __mul__(self, other):
        if isinstance(other, MesSeries):
            return MesSeries(self.series * other.series, self.weight + other.weight)
        return self.scale(other)

    def qdq(self):
        # raises the weight by 2, like any modular derivative
        return MesSeries(self.series.qdq(), self.weight + 2)

    def to_json(self):
        out = self.series.to_json()
        out["weight"] = self.weight
        out["normalized"] = True
        if self.index is not None:
            out["index"] = list(self.index)
        return out


@lru_cache(maxsize=None)
def _gts(index, N):
    # read-only cache of the rational divisor-sum series
    return gtilde_shuffle(index, N)


def _mes_tilde(index, N, ctx):
    """Normalized G^sh as a complex q-series (cached per context)."""

    def compute():
        with ctx.working_context():
            tpi = two_pi_i(ctx)
            total = QSeries.zero(N, complex_=True)
            for (w, l), c in mes_symbolic(index).terms.items():
                z = mzv_shuffle_reg(HElem.word(w), ctx) if w else gmpy2.mpfr(1)
                if z == 0:
                    continue
                scalar = gmpy2.mpc(c * z) * tpi ** -len(w) * (-1) ** sum(l)
                gpart = _gts(l, N) if l else QSeries.const(Fraction(1), N)
                total = total + gpart.scale(scalar)
            return total

    return ctx.cached(("mes_tilde", tuple(index), N), compute)


def mes_numeric(index, N, ctx):
    index = tuple(index)
    if not index:
        raise ValueError("empty index")
    return MesSeries(_mes_tilde(index, N, ctx), sum(index), index)


def smes(index, N, ctx):
    """Normalized symmetric MES: signed sum of products over index splits."""
    index = tuple(index)
    if not index:
        raise ValueError("empty index")
    d = len(index)
    k = sum(index)

    def part(idx):
        if not idx:
            return QSeries.const(Fraction(1), N)
        return _mes_tilde(idx, N, ctx)

    def compute():
        with ctx.working_context():
            total = QSeries.zero(N, complex_=True)
            for j in range(d + 1):
                sign = (-1) ** sum(index[j:])
                total = total + (part(index[:j]) * part(tuple(reversed(index[j:])))).scale(
                    gmpy2.mpc(sign)
                )
            return total

    return MesSeries(ctx.cached(("smes_tilde", index, N), compute), k, index)


def gamma_me(ctx, trunc, N):
    """<Gamma_ME | w> = G^sh(w) as raw complex q-series, extended to all
    words through reg0."""
    ring = QSeriesRing(N)
    coeffs = {"": ring.one()}
    with ctx.working_context():
        tpi = two_pi_i(ctx)
        for n in range(1, trunc + 1):
            for p in itertools.product("01", repeat=n):
                w = "".join(p)
                acc = ring.zero()
                for u, c in reg0(HElem.word(w)).terms.items():
                    idx = word_index(u)
                    scalar = gmpy2.mpc(c) * tpi ** sum(idx)
                    acc = acc + _mes_tilde(idx, N, ctx).scale(scalar)
                coeffs[w] = acc
    return NCSeries(ring, trunc, coeffs)


def gamma_me_composed(ctx, trunc, N):
    """Gamma_ME through the group law: Gamma_MD(X0, Phi X1 Phi^-1) Phi.

    Pairing the Goncharov coproduct with the MZV character on the left
    slot and the divisor-sum character on the right matches composing
    with Phi as the conjugating factor, so this reproduces gamma_me.
    """
    ring = QSeriesRing(N)
    gmd = gamma_md(ctx, trunc, N)
    phi = phi_shuffle(ctx, trunc)
    lifted = NCSeries(
        ring, trunc, {w: QSeries.const(c, N) for w, c in phi.coeffs.items()}
    )
    with ctx.working_context():
        return ihara_compose(lifted, gmd)


def smes_via_ihara(index, N, ctx):
    """Alternative route: <Gamma_ME X1 Gamma_ME^{-1} | e_index e_1>,
    normalized; cross-check for smes."""
    index = tuple(index)
    k = sum(index)
    G = gamma_me(ctx, k + 1, N)
    with ctx.working_context():
        S = G * NCSeries.gen(G.ring, k + 1, "1") * series_inverse(G)
        raw = pair(S, index_word(index) + "1")
        return MesSeries(raw.scale(two_pi_i(ctx) ** -k), k, index)


def c_structure(p, r, s):
    """Coefficient of zeta^sh(p) g^sh_{r+s-p} in G^sh_{r,s}."""
    return (
        (1 if r == p else 0)
        + (-1) ** r * math.comb(p - 1, r - 1)
        + (-1) ** (p - s) * math.comb(p - 1, s - 1)
    )


def verify_identity(lhs, rhs):
    """Max coefficientwise deviation between the two sides."""
    a = lhs.series if isinstance(lhs, MesSeries) else lhs
    b = rhs.series if isinstance(rhs, MesSeries) else rhs
    if a.trunc != b.trunc:
        raise ValueError("truncation mismatch")
    return (a - b).max_abs()


def zero_series(N, weight):
    return MesSeries(QSeries.zero(N, complex_=True), weight)


def kaneko_sum_deviation(k, N, ctx, even_only=False):
    """Sum formulas: sum_j Gt_{j,k-j} vs (1 or 3/4) Gt_k - qdq Gt_{k-2}/(2(k-2))."""
    if k < 3 or (even_only and k % 2):
        raise ValueError("k out of range")
    js = range(2, k - 1, 2) if even_only else range(1, k - 1)
    lhs = zero_series(N, k)
    for j in js:
        lhs = lhs + mes_numeric((j, k - j), N, ctx)
    with ctx.working_context():
        front = Fraction(3, 4) if even_only else 1
        rhs = mes_numeric((k,), N, ctx).scale(front) - mes_numeric(
            (k - 2,), N, ctx
        ).qdq().scale(Fraction(1, 2 * (k - 2)))
        return verify_identity(lhs, rhs)


def depth2_closed_form_deviation(r, s, N, ctx):
    """Closed forms for Gt^{sh,S}_{r,s}: even weight (r,s >= 2 or r = 1)
    and odd weight (r > s)."""
    k = r + s
    lhs = smes((r, s), N, ctx)
    with ctx.working_context():
        gk = mes_numeric((k,), N, ctx)
        if k % 2 == 0:
            if r == 1:
                rhs = mes_numeric((k - 2,), N, ctx).qdq().scale(
                    Fraction(1, 2 * (k - 2))
                ) - gk
            elif r % 2 == 0 and s % 2 == 0:
                rhs = mes_numeric((r,), N, ctx) * mes_numeric((s,), N, ctx)
                rhs = rhs.scale(2) - gk
            elif r % 2 and s % 2:
                rhs = -gk
            else:
                raise ValueError("no closed form for mixed parity at even weight")
        else:
            if not r > s:
                raise ValueError("odd-weight closed form needs r > s")
            if s % 2 == 0:
                rhs = mes_numeric((r, s), N, ctx).scale(2) + gk
            else:
                rhs = -mes_numeric((s, r), N, ctx).scale(2) - gk
                if s == 1:
                    rhs = rhs + mes_numeric((k - 2,), N, ctx).qdq().scale(
                        Fraction(1, 2 * (k - 2))
                    )
        return verify_identity(lhs, rhs)
