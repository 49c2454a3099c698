"""Truncated q-series: multiple divisor sums, their shuffle variant,
classical Eisenstein series, the discriminant, and the bivariate-to-
multivariate generating machinery behind the shuffle variant.

Rational series carry Fraction coefficients; complex series carry gmpy2
mpc coefficients at whatever precision the ambient gmpy2 context holds.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import gmpy2


class QSeries:
    """Coefficients c_0..c_N of a power series in q, truncated at q^N."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc=None):
        coeffs = list(coeffs)
        if trunc is None:
            trunc = len(coeffs) - 1
        if len(coeffs) != trunc + 1:
            raise ValueError("coefficient count must equal trunc + 1")
        self.coeffs = coeffs
        self.trunc = trunc

    @classmethod
    def zero(cls, trunc, complex_=False):
        z = gmpy2.mpc(0) if complex_ else Fraction(0)
        return cls([z] * (trunc + 1), trunc)

    @classmethod
    def const(cls, value, trunc):
        s = cls.zero(trunc, complex_=not isinstance(value, (int, Fraction)))
        s.coeffs[0] = value if not isinstance(value, int) else Fraction(value)
        return s

    @property
    def kind(self):
        return "rational" if self.is_rational() else "complex"

    def is_rational(self):
        return all(isinstance(c, (Fraction, int)) for c in self.coeffs)

    def to_complex(self):
        return QSeries([gmpy2.mpc(c) for c in self.coeffs], self.trunc)

    def _check(self, other):
        if self.trunc != other.trunc:
            raise ValueError("truncation mismatch")

    def __add__(self, other):
        self._check(other)
        return QSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.trunc)

    def __sub__(self, other):
        self._check(other)
        return QSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.trunc)

    def __neg__(self):
        return QSeries([-a for a in self.coeffs], self.trunc)

    def scale(self, scalar):
        return QSeries([scalar * a for a in self.coeffs], self.trunc)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        self._check(other)
        n = self.trunc
        a, b = self.coeffs, other.coeffs
        out = [None] * (n + 1)
        for i in range(n + 1):
            acc = a[0] * b[i]
            for j in range(1, i + 1):
                if a[j]:
                    acc = acc + a[j] * b[i - j]
            out[i] = acc
        return QSeries(out, n)

    __rmul__ = scale

    def qdq(self):
        """q d/dq."""
        return QSeries([n * c for n, c in enumerate(self.coeffs)], self.trunc)

    def truncate(self, new_trunc):
        if new_trunc > self.trunc:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[: new_trunc + 1], new_trunc)

    def max_abs(self):
        if self.is_rational():
            return max((abs(c) for c in self.coeffs), default=Fraction(0))
        return max((abs(gmpy2.mpc(c)) for c in self.coeffs), default=gmpy2.mpfr(0))

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.trunc == other.trunc and self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"QSeries([{head}{', ...' if self.trunc > 5 else ''}], N={self.trunc})"

    def to_json(self):
        if self.is_rational():
            return {
                "kind": "rational",
                "trunc": self.trunc,
                "coeffs": [str(Fraction(c)) for c in self.coeffs],
            }
        prec = max(
            (gmpy2.mpc(c).precision[0] for c in self.coeffs), default=53
        )
        return {
            "kind": "complex",
            "trunc": self.trunc,
            "precision": prec,
            "coeffs": [
                [format(gmpy2.mpc(c).real, ".36g"), format(gmpy2.mpc(c).imag, ".36g")]
                for c in self.coeffs
            ],
        }


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2), by the standard recurrence."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(n):
        acc += math.comb(n + 1, k) * bernoulli(k)
    return -acc / (n + 1)


def _ell_power_series(k: int, m: int, N: int):
    """Integer coefficients of sum_{l>=1} l^{k-1} q^{l m}, truncated at q^N."""
    out = [0] * (N + 1)
    for l in range(1, N // m + 1):
        out[l * m] = l ** (k - 1)
    return out


def _binom_tail_series(j: int, m: int, N: int):
    """Integer coefficients of (q^m/(1-q^m))^j = sum_{l>=j} C(l-1,j-1) q^{l m}."""
    out = [0] * (N + 1)
    for l in range(j, N // m + 1):
        out[l * m] = math.comb(l - 1, j - 1)
    return out


def _mul_int_series(a, b, N):
    out = [0] * (N + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(N + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
    return out


def gtilde(index, N: int) -> QSeries:
    """Multiple divisor sum series:
    c_n = sum over l_j >= 1, 0 < m_1 < ... < m_d, sum l_j m_j = n of
    prod l_j^{k_j - 1} / (k_j - 1)!.
    """
    ks = tuple(index)
    if not ks:
        raise ValueError("gtilde needs a nonempty index")
    if N < 1:
        raise ValueError("truncation must be >= 1")
    prev = None  # prev[m]: int series for chains with current largest part m
    for k in ks:
        cur = [None] * (N + 1)
        prefix = [0] * (N + 1)  # sum of prev[m'] for m' < m
        for m in range(1, N + 1):
            s = _ell_power_series(k, m, N)
            if prev is None:
                cur[m] = s
            else:
                cur[m] = _mul_int_series(prefix, s, N)
            if prev is not None:
                pm = prev[m]
                if pm is not None:
                    prefix = [p + x for p, x in zip(prefix, pm)]
        prev = cur
    total = [0] * (N + 1)
    for m in range(1, N + 1):
        if prev[m] is not None:
            total = [t + x for t, x in zip(total, prev[m])]
    scale = Fraction(1)
    for k in ks:
        scale /= math.factorial(k - 1)
    return QSeries([scale * t for t in total], N)


def _compositions(d: int):
    """All ordered tuples of positive integers summing to d."""
    if d == 0:
        yield ()
        return
    for first in range(1, d + 1):
        for rest in _compositions(d - first):
            yield (first,) + rest


def gtilde_shuffle(index, N: int) -> QSeries:
    """Shuffle variant of the multiple divisor sums.

    Defined as the Taylor coefficient of x_1^{k_1-1}..x_d^{k_d-1} in
    h^(d)(x_d-x_{d-1},...,x_2-x_1,x_1).  The exponential weights of each
    composition term collapse to m_1^{k_d-1} prod_t (m_{t+1}-m_t)^{...},
    which is summed by a chain DP (binomial expansion of the difference
    powers keeps each level quadratic in N).
    """
    ks = tuple(index)
    if not ks:
        raise ValueError("gtilde_shuffle needs a nonempty index")
    d = len(ks)
    fact_scale = Fraction(1)
    for k in ks:
        fact_scale /= math.factorial(k - 1)
    # DP over (s, m): s = number of x-slots consumed by the blocks placed so
    # far, m = largest chain element used.  One transition per block size j,
    # shared across all compositions; the difference-power weight
    # (m' - m)^{k_{d-s} - 1} is handled by binomial expansion with running
    # prefix sums over m.
    F = [dict() for _ in range(d + 1)]
    F[0][0] = [Fraction(1)] + [0] * N
    for s in range(d):
        if not F[s]:
            continue
        kappa = ks[d - s - 1]  # weight exponent source k_{d-s}
        binoms = [math.comb(kappa - 1, a) for a in range(kappa)]
        allowed = []
        for j in range(1, d - s + 1):
            if all(ks[p - 1] == 1 for p in range(d - s - j + 1, d - s)):
                allowed.append(j)
        if not allowed:
            continue
        jfact = {j: Fraction(1, math.factorial(j)) for j in allowed}
        PS = [[0] * (N + 1) for _ in range(kappa)]
        for mp in range(1, N + 1):
            fm = F[s].get(mp - 1)
            if fm is not None:
                for a in range(kappa):
                    wgt = (-(mp - 1)) ** (kappa - 1 - a)
                    if wgt:
                        ps = PS[a]
                        for i in range(N + 1):
                            if fm[i]:
                                ps[i] += wgt * fm[i]
            inner = [0] * (N + 1)
            nz = False
            for a in range(kappa):
                wgt = binoms[a] * mp**a
                ps = PS[a]
                for i in range(N + 1 - mp):
                    if ps[i]:
                        inner[i] += wgt * ps[i]
                        nz = True
            if not nz:
                continue
            for j in allowed:
                tail = _binom_tail_series(j, mp, N)
                add = _mul_int_series(inner, tail, N)
                if not any(add):
                    continue
                scale = jfact[j]
                tgt = F[s + j].get(mp)
                if tgt is None:
                    F[s + j][mp] = [scale * x if x else 0 for x in add]
                else:
                    for i in range(N + 1):
                        if add[i]:
                            tgt[i] += scale * add[i]
    total = [Fraction(0)] * (N + 1)
    for series in F[d].values():
        for i in range(N + 1):
            if series[i]:
                total[i] += series[i]
    return QSeries([fact_scale * t for t in total], N)


def eisenstein_tilde(k: int, N: int) -> QSeries:
    """Classical normalized Eisenstein series: -B_k/(2 k!) + gtilde_k."""
    if k % 2 or k < 2:
        raise ValueError("eisenstein_tilde requires even k >= 2")
    s = gtilde((k,), N)
    s.coeffs[0] = -bernoulli(k) / (2 * math.factorial(k))
    return s


def discriminant(N: int) -> QSeries:
    """q prod_{n>=1} (1 - q^n)^24, truncated at q^N."""
    if N < 1:
        raise ValueError("truncation must be >= 1")
    eta = [0] * (N + 1)
    eta[0] = 1
    for n in range(1, N + 1):
        # multiply by (1 - q^n)
        for i in range(N, n - 1, -1):
            eta[i] -= eta[i - n]
    p = eta
    for _ in range(2):  # p^2 twice -> p^4
        p = _mul_int_series(p, p, N)
    p8 = _mul_int_series(p, p, N)
    p24 = _mul_int_series(_mul_int_series(p8, p8, N), p8, N)
    out = [Fraction(0)] * (N + 1)
    for i in range(N):
        out[i + 1] = Fraction(p24[i])
    return QSeries(out, N)


class XPolyQSeries:
    """Polynomial in x_1..x_d with QSeries coefficients, total degree <= bound."""

    __slots__ = ("d", "bound", "trunc", "terms")

    def __init__(self, d, bound, trunc, terms=None):
        self.d = d
        self.bound = bound
        self.trunc = trunc
        self.terms = {}
        if terms:
            for e, s in terms.items():
                if sum(e) <= bound and any(s.coeffs):
                    self.terms[e] = s

    def coeff(self, exps) -> QSeries:
        return self.terms.get(tuple(exps), QSeries.zero(self.trunc))

    def __add__(self, other):
        out = dict(self.terms)
        for e, s in other.terms.items():
            out[e] = out[e] + s if e in out else s
        return XPolyQSeries(self.d, self.bound, self.trunc, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, s in other.terms.items():
            out[e] = out[e] - s if e in out else -s
        return XPolyQSeries(self.d, self.bound, self.trunc, out)

    def scale(self, scalar):
        return XPolyQSeries(
            self.d, self.bound, self.trunc,
            {e: s.scale(scalar) for e, s in self.terms.items()},
        )

    def mul(self, other):
        out = {}
        for e1, s1 in self.terms.items():
            for e2, s2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) <= self.bound:
                    p = s1 * s2
                    out[e] = out[e] + p if e in out else p
        return XPolyQSeries(self.d, self.bound, self.trunc, out)

    def subst_linear(self, rows):
        """Substitute x_i -> sum_j rows[i][j] y_j (integer matrix)."""
        dy = len(rows[0])
        out = {}
        for e, s in self.terms.items():
            # expand prod_i (sum_j rows[i][j] y_j)^{e_i}
            expansion = {tuple([0] * dy): 1}
            for i, ei in enumerate(e):
                for _ in range(ei):
                    nxt = {}
                    for mono, c in expansion.items():
                        for j, rij in enumerate(rows[i]):
                            if rij:
                                m2 = list(mono)
                                m2[j] += 1
                                m2 = tuple(m2)
                                nxt[m2] = nxt.get(m2, 0) + c * rij
                    expansion = nxt
            for mono, c in expansion.items():
                add = s.scale(Fraction(c))
                out[mono] = out[mono] + add if mono in out else add
        return XPolyQSeries(dy, self.bound, self.trunc, out)

    def is_zero(self):
        return all(not any(s.coeffs) for s in self.terms.values())

    def __eq__(self, other):
        if isinstance(other, XPolyQSeries):
            return (self - other).is_zero()
        return NotImplemented


def H_series(ks, bound: int, N: int) -> XPolyQSeries:
    """H^(r) with upper parameters ks: the r-variable polynomial-in-x
    q-series sum_{0<m_1<...<m_r} prod_t e^{m_t x_t} (q^{m_t}/(1-q^{m_t}))^{k_t},
    Taylor-expanded in the x's to total degree <= bound.
    """
    ks = tuple(ks)
    r = len(ks)
    terms = {}
    for total_deg in range(bound + 1):
        for exps in _exponents(r, total_deg):
            prev = None
            for t, k in enumerate(ks):
                cur = [None] * (N + 1)
                prefix = [0] * (N + 1)
                for m in range(1, N + 1):
                    s = _binom_tail_series(k, m, N)
                    w = m ** exps[t]
                    if prev is None:
                        base = s
                    else:
                        base = _mul_int_series(prefix, s, N)
                    cur[m] = [w * x for x in base] if w != 1 else base
                    if prev is not None and prev[m] is not None:
                        prefix = [p + x for p, x in zip(prefix, prev[m])]
                prev = cur
            tot = [0] * (N + 1)
            for m in range(1, N + 1):
                if prev[m] is not None:
                    tot = [a + b for a, b in zip(tot, prev[m])]
            scale = Fraction(1)
            for e in exps:
                scale /= math.factorial(e)
            if any(tot):
                terms[exps] = QSeries([scale * t for t in tot], N)
    return XPolyQSeries(r, bound, N, terms)


def _exponents(d, total):
    if d == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _exponents(d - 1, total - first):
            yield (first,) + rest


def h_series(d: int, bound: int, N: int) -> XPolyQSeries:
    """Weighted average of the H^(r): h^(d)(x_1..x_d) = sum over
    compositions (j_1..j_r) of d of 1/(j_1!..j_r!) H^(r) with the t-th
    H-variable set to the sum of the t-th consecutive block of x's.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    out = XPolyQSeries(d, bound, N)
    for comp in _compositions(d):
        r = len(comp)
        h = H_series(comp, bound, N)
        rows = []
        pos = 0
        blocks = []
        for j in comp:
            blocks.append(list(range(pos, pos + j)))
            pos += j
        for t in range(r):
            row = [0] * d
            for i in blocks[t]:
                row[i] = 1
            rows.append(row)
        scale = Fraction(1)
        for j in comp:
            scale /= math.factorial(j)
        out = out + h.subst_linear(rows).scale(scale)
    return out


def gtilde_shuffle_oracle(index, N: int) -> QSeries:
    """Slow reference route for gtilde_shuffle via h_series substitution."""
    ks = tuple(index)
    d = len(ks)
    bound = sum(ks) - d
    h = h_series(d, bound, N)
    # substitute (x_d - x_{d-1}, ..., x_2 - x_1, x_1)
    rows = []
    for t in range(d):
        row = [0] * d
        hi = d - t  # argument t is x_{d-t} - x_{d-t-1}
        row[hi - 1] = 1
        if hi - 2 >= 0:
            row[hi - 2] = -1
        rows.append(row)
    sub = h.subst_linear(rows)
    return sub.coeff(tuple(k - 1 for k in ks))
