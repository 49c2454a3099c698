"""Numeric rank estimation and relation detection over q-series families.

SeriesFamily collects complex q-series at a common truncation and
precision; on top of it sit the pivoted numeric rank with a
double-truncation stability check, lattice-based integer relation
search, exact-symbol upper bounds from the linear shuffle and reversal
relations, cusp form expressions in symmetric triple Eisenstein series,
and the depth-2 dimension checks.
"""

import itertools
import math
from fractions import Fraction

import gmpy2

from .mes import _mes_tilde, smes
from .mzv import mzv
from .qseries import QSeries, bernoulli, discriminant, gtilde_shuffle
from .ranks import RatMatrix, bkm
from .words import HElem, index_word, shuffle, word_index


def compositions(k, depth=None):
    """All indices of weight k, optionally of fixed depth."""
    if k == 0:
        return [()] if depth in (None, 0) else []
    out = []
    for first in range(1, k + 1):
        for rest in compositions(k - first):
            out.append((first,) + rest)
    if depth is not None:
        out = [i for i in out if len(i) == depth]
    return out


class SeriesFamily:
    """Labeled complex q-series at shared truncation and precision."""

    __slots__ = ("labels", "series", "trunc", "precision")

    def __init__(self, labels, series, precision):
        labels = list(labels)
        series = list(series)
        if not series or len(labels) != len(series):
            raise ValueError("need matching nonempty labels and series")
        trunc = series[0].trunc
        if any(s.trunc != trunc for s in series):
            raise ValueError("mixed truncations")
        self.labels = labels
        self.series = [s.to_complex() for s in series]
        self.trunc = trunc
        self.precision = precision

    @classmethod
    def smes_weight(cls, k, N, ctx, depths=None):
        idxs = [
            i
            for i in compositions(k)
            if depths is None or len(i) in depths
        ]
        return cls(
            [f"S{i}" for i in idxs],
            [smes(i, N, ctx).series for i in idxs],
            ctx.precision,
        )

    @classmethod
    def mes_admissible(cls, k, N, ctx):
        idxs = [i for i in compositions(k) if i[-1] >= 2]
        return cls(
            [f"G{i}" for i in idxs],
            [_mes_tilde(i, N, ctx) for i in idxs],
            ctx.precision,
        )

    def extended(self, label, series):
        return SeriesFamily(
            self.labels + [label], self.series + [series], self.precision
        )

    def real_rows(self, upto=None):
        """One row per series: interleaved real and imaginary parts."""
        upto = self.trunc if upto is None else upto
        rows = []
        for s in self.series:
            row = []
            for c in s.coeffs[: upto + 1]:
                c = gmpy2.mpc(c)
                row.extend((gmpy2.mpfr(c.real), gmpy2.mpfr(c.imag)))
            rows.append(row)
        return rows

    def to_json(self):
        return {
            "labels": list(self.labels),
            "trunc": self.trunc,
            "precision": self.precision,
            "series": [s.to_json() for s in self.series],
        }


class RelationReport:
    """A rational relation sum_i c_i * series_i = 0 with its residual."""

    __slots__ = ("labels", "coefficients", "residual", "method", "trunc", "precision")

    def __init__(self, labels, coefficients, residual, method, trunc, precision):
        self.labels = list(labels)
        self.coefficients = [Fraction(c) for c in coefficients]
        self.residual = residual
        self.method = method
        self.trunc = trunc
        self.precision = precision

    def to_json(self):
        return {
            "labels": self.labels,
            "coefficients": [str(c) for c in self.coefficients],
            "residual": format(float(self.residual), ".6e"),
            "method": self.method,
            "N": self.trunc,
            "P": self.precision,
        }


def _pivot_rank(rows, threshold):
    """Scaled partial-pivot elimination; pivots below threshold are noise.

    Columns are equilibrated to unit max, except that columns whose
    magnitude sits below the threshold relative to the largest entry of
    the whole matrix are treated as cancellation noise and zeroed, so a
    numerically vanishing direction is never renormalized into a pivot.
    """
    rows = [list(r) for r in rows]
    if rows:
        glob = max(abs(x) for r in rows for x in r)
        floor = glob * threshold
        for c in range(len(rows[0])):
            big = max(abs(r[c]) for r in rows)
            if big <= floor:
                for r in rows:
                    r[c] = gmpy2.mpfr(0)
            elif big > 0:
                inv = 1 / big
                for r in rows:
                    r[c] = r[c] * inv
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = max(range(r, nrows), key=lambda i: abs(rows[i][c]))
        if abs(rows[pivot][c]) <= threshold:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c] * inv
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        rank += 1
        r += 1
    return rank


STABILITY_GAP = 20


def numeric_rank(family, threshold=None):
    """Rank of the coefficient matrix, cross-checked at two truncations."""
    P = family.precision
    if family.trunc <= STABILITY_GAP:
        raise ValueError("truncation too small for the stability check")
    with gmpy2.context(precision=P):
        thr = gmpy2.mpfr(2) ** -(P // 4) if threshold is None else threshold
        full = _pivot_rank(family.real_rows(), thr)
        short = _pivot_rank(family.real_rows(family.trunc - STABILITY_GAP), thr)
    if full != short:
        raise ArithmeticError(
            f"numeric rank unstable ({full} vs {short}); raise N or precision"
        )
    return full


def _relation_rows(k):
    """Integer relation matrix of the linear shuffle + reversal system."""
    symbols = compositions(k)
    col = {i: n for n, i in enumerate(symbols)}
    rows = []
    sign_k = (-1) ** k
    for idx in symbols:
        row = [0] * len(symbols)
        row[col[idx]] += 1
        row[col[idx[::-1]]] -= sign_k
        if any(row):
            rows.append(row)
        for j in range(1, len(idx)):
            head, tail = idx[:j], idx[j:]
            row = [0] * len(symbols)
            sh = shuffle(HElem.from_index(head), HElem.from_index(tail))
            for w, c in sh.terms.items():
                row[col[word_index(w)]] += c
            row[col[head + tail[::-1]]] -= (-1) ** sum(tail)
            if any(row):
                rows.append(row)
    return symbols, rows


def symbolic_upper_bound(k):
    """Symbol count minus the exact rank of the shuffle/reversal system."""
    if k < 2:
        raise ValueError("need k >= 2")
    symbols, rows = _relation_rows(k)
    if not rows:
        return len(symbols)
    return len(symbols) - RatMatrix(rows).rank()


def _lll(basis, delta=Fraction(3, 4)):
    """Integer LLL reduction; returns the reduced basis rows."""
    basis = [list(map(int, b)) for b in basis]
    n = len(basis)

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        star = []
        norms = []
        for i in range(n):
            v = [Fraction(x) for x in basis[i]]
            for j in range(i):
                if norms[j]:
                    mu[i][j] = (
                        sum(Fraction(a) * b for a, b in zip(basis[i], star[j]))
                        / norms[j]
                    )
                    v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
            star.append(v)
            norms.append(dot(v, v))
        return mu, norms

    mu, norms = gso()
    i = 1
    while i < n:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                basis[i] = [a - q * b for a, b in zip(basis[i], basis[j])]
                mu, norms = gso()
        if norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            basis[i], basis[i - 1] = basis[i - 1], basis[i]
            mu, norms = gso()
            i = max(i - 1, 1)
    return basis


def _relation_residual(family, coeffs):
    total = QSeries.zero(family.trunc, complex_=True)
    for c, s in zip(coeffs, family.series):
        if c:
            total = total + s.scale(gmpy2.mpq(c))
    return total.max_abs()


def integer_relation(family, height_bound=None):
    """Small integer relation among the family members via lattice
    reduction on scaled coefficient vectors."""
    P = family.precision
    m = len(family.series)
    if m < 2:
        raise ValueError("need at least two series")
    with gmpy2.context(precision=P):
        K = gmpy2.mpz(2) ** math.ceil(0.6 * P)
        rows = family.real_rows()
        lattice = []
        for i, row in enumerate(rows):
            vec = [0] * m
            vec[i] = 1
            vec.extend(int(gmpy2.rint(x * K)) for x in row)
            lattice.append(vec)
        reduced = _lll(lattice)
        tol = gmpy2.mpfr(2) ** -(P // 2)
        best = None
        for cand in sorted(reduced, key=lambda v: sum(x * x for x in v)):
            rel = cand[:m]
            if not any(rel):
                continue
            if height_bound is not None and max(map(abs, rel)) > height_bound:
                continue
            res = _relation_residual(family, rel)
            if res < tol:
                best = (rel, res)
                break
    if best is None:
        raise ValueError("no integer relation within the height bound")
    rel, res = best
    g = math.gcd(*rel)
    rel = [c // g for c in rel]
    if next(c for c in rel if c) < 0:
        rel = [-c for c in rel]
    return RelationReport(
        family.labels, rel, res, "lll", family.trunc, family.precision
    )


def express_in_family(label, target, family, tol=None, max_den=None):
    """Rational coefficients writing target over the family, verified by
    exact re-substitution; reported as a relation with target first."""
    P = family.precision
    m = len(family.series)
    target = target.to_complex()
    if target.trunc != family.trunc:
        raise ValueError("truncation mismatch")
    with gmpy2.context(precision=P):
        cols = family.real_rows()
        rhs = SeriesFamily(["t"], [target], P).real_rows()[0]
        # equations indexed by coefficient slot; unknowns by family member
        eqs = [[cols[i][n] for i in range(m)] + [rhs[n]] for n in range(len(rhs))]
        work = [list(e) for e in eqs]
        sol_rows = []
        r = 0
        for c in range(m):
            pivot = max(range(r, len(work)), key=lambda i: abs(work[i][c]))
            if not abs(work[pivot][c]) > 0:
                raise ArithmeticError("family is numerically degenerate")
            work[r], work[pivot] = work[pivot], work[r]
            inv = 1 / work[r][c]
            work[r] = [x * inv for x in work[r]]
            for i in range(len(work)):
                if i != r and work[i][c]:
                    f = work[i][c]
                    work[i] = [a - f * b for a, b in zip(work[i], work[r])]
            r += 1
        raw = [work[i][m] for i in range(m)]
        bound = 2 ** (P // 4) if max_den is None else max_den
        coeffs = []
        for x in raw:
            num, den = gmpy2.mpq(x).as_integer_ratio()
            coeffs.append(Fraction(int(num), int(den)).limit_denominator(bound))
        rel = QSeries.zero(family.trunc, complex_=True)
        for c, s in zip(coeffs, family.series):
            if c:
                rel = rel + s.scale(gmpy2.mpq(c))
        residual = (rel - target).max_abs()
        want = gmpy2.mpfr(2) ** -(P // 2) if tol is None else tol
        if not residual < want:
            raise ArithmeticError(f"residual {residual} exceeds tolerance")
    return RelationReport(
        [label] + family.labels,
        [Fraction(-1)] + coeffs,
        residual,
        "solve",
        family.trunc,
        family.precision,
    )


def independent_subfamily(family, threshold=None):
    """Greedy maximal subfamily with full numeric rank."""
    P = family.precision
    with gmpy2.context(precision=P):
        thr = gmpy2.mpfr(2) ** -(P // 4) if threshold is None else threshold
        keep_labels, keep_series = [], []
        rank = 0
        for label, s in zip(family.labels, family.series):
            trial = keep_series + [s]
            fam = SeriesFamily(keep_labels + [label], trial, P)
            if _pivot_rank(fam.real_rows(), thr) > rank:
                keep_labels.append(label)
                keep_series.append(s)
                rank += 1
    return SeriesFamily(keep_labels, keep_series, P)


def eisenstein_product_basis(k, N, ctx):
    """Span of M_k: the weight-k series and the even products."""
    labels = [f"G({k},)"]
    series = [_mes_tilde((k,), N, ctx)]
    for a in range(4, k // 2 + 1, 2):
        labels.append(f"G({a},)G({k - a},)")
        series.append(_mes_tilde((a,), N, ctx) * _mes_tilde((k - a,), N, ctx))
    return SeriesFamily(labels, series, ctx.precision)


def cusp_expression(k, N, ctx, indices=None, targets=None):
    """Cusp forms of weight k over symmetric triple Eisenstein series.

    Each target (label, series) is solved over the depth-3 SMES family;
    by default the targets are the Eisenstein products with their
    constant term removed, and the family is a maximal numerically
    independent subfamily of all weight-k depth-3 indices.
    """
    if k < 10 or k % 2:
        raise ValueError("need even k >= 10")
    if indices is None:
        base = SeriesFamily.smes_weight(k, N, ctx, depths=(3,))
        family = independent_subfamily(base)
    else:
        family = SeriesFamily(
            [f"S{tuple(i)}" for i in indices],
            [smes(tuple(i), N, ctx).series for i in indices],
            ctx.precision,
        )
    if targets is None:
        targets = []
        gk = _mes_tilde((k,), N, ctx)
        gk0 = gk.coeffs[0]
        for a in range(4, k // 2 + 1, 2):
            prod = _mes_tilde((a,), N, ctx) * _mes_tilde((k - a,), N, ctx)
            cusp = prod - gk.scale(prod.coeffs[0] / gk0)
            targets.append((f"cusp({a},{k - a})", cusp))
    return [
        express_in_family(label, series, family, max_den=2**64)
        for label, series in targets
    ]


def im_decomposition_deviation(k, ell, N, ctx):
    """Deviation in the imaginary-part identity for the depth-2 series
    of index (k-2l+1, 2l-1) at odd weight k."""
    if k < 5 or k % 2 == 0:
        raise ValueError("k must be odd and >= 5")
    K = (k - 1) // 2
    if not 1 <= ell <= K:
        raise ValueError("l out of range")
    with ctx.working_context():
        s = smes((k - 2 * ell + 1, 2 * ell - 1), N, ctx).series
        lhs = QSeries(
            [gmpy2.mpc(0)]
            + [gmpy2.mpc(0, gmpy2.mpc(c).imag) for c in s.coeffs[1:]],
            N,
        )
        tpi = 2 * gmpy2.mpc(0, ctx.pi)
        rhs = QSeries.zero(N, complex_=True)
        for m in range(1, K):
            b = bkm(k, ell, m)
            if not b:
                continue
            zt = mzv((2 * m + 1,), ctx) * tpi ** -(2 * m + 1)
            scalar = 2 * b * gmpy2.mpc(0, zt.imag)
            rhs = rhs + gtilde_shuffle((k - 2 * m - 1,), N).to_complex().scale(scalar)
        return (lhs - rhs).max_abs()


def theorem12_check(k, N, ctx):
    """Numeric dimension of the depth-2 SMES space against the theorem."""
    if k < 3:
        raise ValueError("need k >= 3")
    report = {"k": k, "N": N, "P": ctx.precision}
    if k % 2 == 0:
        family = SeriesFamily.smes_weight(k, N, ctx, depths=(2,))
        dim = numeric_rank(family)
        expected = 1 if k == 4 else (k + 4) // 4 - (k - 2) // 6
        report["dim"] = dim
        report["expected"] = expected
        if k >= 6:
            # generators must decompose over M_k plus the derivative
            basis = eisenstein_product_basis(k, N, ctx).extended(
                f"G({k - 2},)'", _mes_tilde((k - 2,), N, ctx).qdq()
            )
            brank = numeric_rank(basis)
            joint = SeriesFamily(
                basis.labels + family.labels,
                basis.series + family.series,
                ctx.precision,
            )
            report["decomposes"] = numeric_rank(joint) == brank == expected
    else:
        kappa = k // 3
        idxs = [(j, k - j) for j in range(1, kappa + 1)]
        family = SeriesFamily(
            [f"S{i}" for i in idxs],
            [smes(i, N, ctx).series for i in idxs],
            ctx.precision,
        )
        dim = numeric_rank(family)
        report["dim"] = dim
        report["expected"] = kappa
        full = SeriesFamily.smes_weight(k, N, ctx, depths=(2,))
        joint = SeriesFamily(
            family.labels + full.labels,
            family.series + full.series,
            ctx.precision,
        )
        report["decomposes"] = numeric_rank(joint) == dim
    report["ok"] = report["dim"] == report["expected"] and report.get(
        "decomposes", True
    )
    return report
