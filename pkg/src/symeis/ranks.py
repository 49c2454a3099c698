"""Exact rational linear algebra and the binomial rank certificate.

RatMatrix carries rank (fraction-free, with a modular fast path for
large integer matrices), reduced row echelon form, and kernel bases.
On top of it sit the b_k(l,m) binomial matrices, the two binomial
identities, and the staged row reduction that certifies full rank.
"""

import math
import random
from fractions import Fraction

# primes just below 2^30 so products of two residues fit in int64
_PRIMES = (1073741789, 1073741783, 1073741741)

# above this pivot-work estimate, integer ranks go through the modular path
_BAREISS_WORK_LIMIT = 2_000_000


class RatMatrix:
    """Immutable matrix of exact rationals."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = [tuple(Fraction(x) for x in r) for r in rows]
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self.rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = width

    def is_integral(self):
        return all(x.denominator == 1 for r in self.rows for x in r)

    def _int_rows(self):
        """Rows scaled to integers (row-wise lcm of denominators)."""
        out = []
        for r in self.rows:
            scale = math.lcm(*(x.denominator for x in r)) if r else 1
            out.append([int(x * scale) for x in r])
        return out

    def rank(self):
        rows = self._int_rows()
        work = self.nrows * self.ncols * min(self.nrows, self.ncols)
        if work <= _BAREISS_WORK_LIMIT:
            return _bareiss_rank(rows)
        ranks = {_modular_rank(rows, p) for p in _PRIMES}
        if len(ranks) == 1:
            return ranks.pop()
        return _bareiss_rank(rows)

    def rref(self):
        """Reduced row echelon form; returns (RatMatrix, pivot columns)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot = next((i for i in range(r, self.nrows) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(self.nrows):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return RatMatrix(rows), pivots

    def kernel(self):
        """Basis of the right kernel, one vector per free column."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            v = [Fraction(0)] * self.ncols
            v[free] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -red.rows[r][free]
            basis.append(tuple(v))
        return basis

    def transpose(self):
        return RatMatrix(list(zip(*self.rows)))

    def to_json(self):
        return {
            "nrows": self.nrows,
            "ncols": self.ncols,
            "rows": [[str(x) for x in r] for r in self.rows],
        }

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols})"


def _bareiss_rank(rows):
    """Fraction-free elimination on integer rows."""
    rows = [list(r) for r in rows]
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, nrows):
            if not any(rows[i][c:]):
                continue
            head = rows[i][c]
            lead = rows[r][c]
            rows[i] = [
                (lead * rows[i][j] - head * rows[r][j]) // prev
                for j in range(ncols)
            ]
        prev = rows[r][c]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def _modular_rank(rows, p):
    import numpy as np

    m = np.array([[x % p for x in r] for r in rows], dtype=np.int64)
    nrows, ncols = m.shape
    rank = 0
    r = 0
    for c in range(ncols):
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        below = m[r + 1 :, c]
        mask = below != 0
        if mask.any():
            m[r + 1 :][mask] = (m[r + 1 :][mask] - np.outer(below[mask], m[r])) % p
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def rank_oracle(M):
    """Naive rational Gaussian elimination; cross-check for rank()."""
    rows = [list(r) for r in M.rows]
    rank = 0
    r = 0
    for c in range(M.ncols):
        pivot = next((i for i in range(r, M.nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, M.nrows):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        rank += 1
        r += 1
    return rank


def _binom(n, m):
    # zero unless n >= m >= 0
    if m < 0 or n < m:
        return 0
    return math.comb(n, m)


def bkm(k, ell, m):
    """b_k(l,m) = C(2m,2l-2) + C(2m,k-2l) - delta_{2l-1,2m+1}."""
    if k < 5 or k % 2 == 0:
        raise ValueError("k must be odd and >= 5")
    K = (k - 1) // 2
    if not (1 <= ell <= K and 1 <= m <= K - 1):
        raise ValueError(f"(l,m)=({ell},{m}) out of range for k={k}")
    return (
        _binom(2 * m, 2 * ell - 2)
        + _binom(2 * m, k - 2 * ell)
        - (1 if 2 * ell - 1 == 2 * m + 1 else 0)
    )


def row_indices(k):
    """The selected rows n_1,...,n_kappa of the full binomial matrix."""
    kappa = k // 3
    K = (k - 1) // 2
    half = (kappa + 1) // 2
    return [ell if ell <= half else ell + K - kappa for ell in range(1, kappa + 1)]


def matrices(k):
    """The K x (K-1) matrix C_k and its square submatrix S_k."""
    if k < 5 or k % 2 == 0:
        raise ValueError("k must be odd and >= 5")
    K = (k - 1) // 2
    kappa = k // 3
    C = RatMatrix(
        [[bkm(k, ell, m) for m in range(1, K)] for ell in range(1, K + 1)]
    )
    S = RatMatrix(
        [[bkm(k, n, m) for m in range(1, kappa + 1)] for n in row_indices(k)]
    )
    return C, S


def binom_identity(j, a, mode="base"):
    """Both sides of the binomial identities behind the rank certificate.

    mode "base": C(j,a) - (-1)^j delta_{j,a}
               = sum_{l=floor(a/2)}^{a} {2C(l+1,a-l) - C(l,a-l)} C(j-l-1,l).
    mode "corollary" (j=2m, a=l'-1): C(2m,l'-1) - delta_{l'-1,2m}
               = C(2m-l',l'-1)
               + sum_{v=1}^{floor(l'/2)} {C(l'-v,v)+C(l'-v-1,v-1)} C(2m-l'+v,l'-v-1).
    """
    if mode == "base":
        lhs = _binom(j, a) - ((-1) ** j if j == a else 0)
        rhs = sum(
            (2 * _binom(ell + 1, a - ell) - _binom(ell, a - ell))
            * _binom(j - ell - 1, ell)
            for ell in range(a // 2, a + 1)
        )
        return lhs, rhs
    if mode == "corollary":
        m, lp = j, a
        lhs = _binom(2 * m, lp - 1) - (1 if lp - 1 == 2 * m else 0)
        rhs = _binom(2 * m - lp, lp - 1) + sum(
            (_binom(lp - v, v) + _binom(lp - v - 1, v - 1))
            * _binom(2 * m - lp + v, lp - v - 1)
            for v in range(1, lp // 2 + 1)
        )
        return lhs, rhs
    raise ValueError(f"unknown mode {mode!r}")


def appendix_reduction(k):
    """Row-reduce the selected binomial submatrix to triangular form.

    Follows the staged elimination exactly: swap rows into
    S'_k + 2*kappa*delta_{3|k}*E_{kk}, then for each l' subtract the
    earlier (already reduced) rows with the prescribed integer
    multipliers, arriving at T_k = (C(2m-l', l'-1)) plus the untouched
    corner correction.  Returns True when every stage lands exactly.
    """
    if k < 5 or k % 2 == 0:
        raise ValueError("k must be odd and >= 5")
    kappa = k // 3
    _, S = matrices(k)
    corr = 2 * kappa if k % 3 == 0 else 0

    sprime = [
        [
            Fraction(_binom(2 * m, lp - 1) - (1 if lp - 1 == 2 * m else 0))
            for m in range(1, kappa + 1)
        ]
        for lp in range(1, kappa + 1)
    ]
    target = [list(r) for r in sprime]
    target[kappa - 1][kappa - 1] += corr

    # S_k must be a row permutation of S'_k plus the corner correction
    if sorted(S.rows) != sorted(tuple(r) for r in target):
        return False

    T = [
        [Fraction(_binom(2 * m - lp, lp - 1)) for m in range(1, kappa + 1)]
        for lp in range(1, kappa + 1)
    ]

    work = [list(r) for r in target]
    for lp in range(2, kappa + 1):
        for v in range(1, lp):
            mult = _binom(lp - v, v) + _binom(lp - v - 1, v - 1)
            if mult:
                prev = work[lp - v - 1]
                work[lp - 1] = [
                    a - mult * b for a, b in zip(work[lp - 1], prev)
                ]
        expect = list(T[lp - 1])
        if lp == kappa:
            expect[kappa - 1] += corr
        if work[lp - 1] != expect:
            return False
    # triangular with nonzero diagonal certifies full rank
    return all(work[i][i] != 0 for i in range(kappa))


def random_matrix(rng_or_seed, nrows, ncols, lo=-5, hi=5, denominators=(1, 2, 3)):
    """Small random rational matrix, for oracle cross-checks."""
    rng = (
        rng_or_seed
        if isinstance(rng_or_seed, random.Random)
        else random.Random(rng_or_seed)
    )
    return RatMatrix(
        [
            [
                Fraction(rng.randint(lo, hi), rng.choice(denominators))
                for _ in range(ncols)
            ]
            for _ in range(nrows)
        ]
    )
