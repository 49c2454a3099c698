"""Homogeneous polynomial spaces and the linear shuffle space.

HomPoly models V_w^(d), homogeneous degree-w polynomials in d variables
over the rationals.  On top of it sit the sharp/flat reindexings, the
shuffle and parity operators, and the kernel space LSh_w^(d).  For two
variables (written X, Y) the module adds the GL_2(Z) action, the period
polynomial style subspaces W_w, FSh^pol_w and W^od_w, the pairing, and
the isomorphisms relating them to LSh_w^(2).
"""

import itertools
import math
from fractions import Fraction

from .ranks import RatMatrix


class HomPoly:
    """Homogeneous polynomial; coeffs keyed by exponent tuples."""

    __slots__ = ("d", "w", "coeffs")

    def __init__(self, d, w, coeffs=None):
        if d < 1 or w < 0:
            raise ValueError("need d >= 1 and w >= 0")
        self.d = d
        self.w = w
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                e = tuple(e)
                c = Fraction(c)
                if len(e) != d or sum(e) != w or min(e) < 0:
                    raise ValueError(f"exponent {e} not homogeneous of degree {w}")
                if c:
                    self.coeffs[e] = c

    @classmethod
    def monomial(cls, d, w, exponents, coeff=1):
        return cls(d, w, {tuple(exponents): Fraction(coeff)})

    @classmethod
    def zero(cls, d, w):
        return cls(d, w)

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return HomPoly(self.d, self.w, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HomPoly(self.d, self.w, {e: -c for e, c in self.coeffs.items()})

    def scale(self, s):
        s = Fraction(s)
        return HomPoly(self.d, self.w, {e: s * c for e, c in self.coeffs.items()})

    def _check(self, other):
        if self.d != other.d or self.w != other.w:
            raise ValueError("dimension or degree mismatch")

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, HomPoly)
            and self.d == other.d
            and self.w == other.w
            and self.coeffs == other.coeffs
        )

    def substitute(self, forms):
        """Evaluate at linear forms: argument i becomes forms[i], a
        length-d vector of coefficients in the target variables."""
        if len(forms) != self.d:
            raise ValueError("need one linear form per variable")
        out = {}
        for e, c in self.coeffs.items():
            term = {(0,) * self.d: c}
            for i, power in enumerate(e):
                for _ in range(power):
                    nxt = {}
                    for mono, mc in term.items():
                        for var, fc in enumerate(forms[i]):
                            if fc:
                                m2 = list(mono)
                                m2[var] += 1
                                m2 = tuple(m2)
                                nxt[m2] = nxt.get(m2, Fraction(0)) + mc * fc
                    term = nxt
            for mono, mc in term.items():
                out[mono] = out.get(mono, Fraction(0)) + mc
        return HomPoly(self.d, self.w, out)

    def vector(self, order):
        return [self.coeffs.get(e, Fraction(0)) for e in order]

    def to_json(self):
        items = sorted(self.coeffs.items(), key=lambda t: t[0], reverse=True)
        return {"d": self.d, "w": self.w, "terms": [[list(e), str(c)] for e, c in items]}

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = "XY" if self.d == 2 else [f"x{i+1}" for i in range(self.d)]
        bits = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            mono = "*".join(
                f"{names[i]}^{p}" if p > 1 else names[i]
                for i, p in enumerate(e)
                if p
            )
            bits.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(bits)


def monomial_order(d, w):
    """Exponent tuples of degree w in graded-lex order, x1 highest."""
    out = []
    for bars in itertools.combinations(range(w + d - 1), d - 1):
        e = []
        prev = -1
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(w + d - 2 - prev)
        out.append(tuple(e))
    return sorted(out, reverse=True)


def _unit(d, i):
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(d))


def reindex(f, mode, j=None):
    """The sharp/flat variable reindexings."""
    d = f.d
    if mode == "sharp":
        forms = [
            tuple(Fraction(1) if v <= i else Fraction(0) for v in range(d))
            for i in range(d)
        ]
    elif mode == "flat":
        forms = []
        for i in range(d):
            row = [Fraction(0)] * d
            row[i] = Fraction(1)
            if i > 0:
                row[i - 1] = Fraction(-1)
            forms.append(tuple(row))
    elif mode == "flat_j":
        if j is None or not 1 <= j <= d - 1:
            raise ValueError("flat_j needs 1 <= j <= d-1")
        forms = []
        for i in range(d):
            row = [Fraction(0)] * d
            row[i] = Fraction(1)
            # the block restart at position j keeps x_{j+1} undifferenced
            if i > 0 and i != j:
                row[i - 1] = Fraction(-1)
            forms.append(tuple(row))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return f.substitute(forms)


def sh_op(f, j, primed=False):
    """The j-th shuffle operator; primed applies the sharp/flat dressing.

    The dressing cumulates the argument list of each shuffled term, so
    the sharp reindexing acts on f before the permutation sum and the
    flat_j one after it.
    """
    d = f.d
    if not 1 <= j <= d - 1:
        raise ValueError("need 1 <= j <= d-1")
    base = reindex(f, "sharp") if primed else f
    total = HomPoly.zero(d, f.w)
    for slots in itertools.combinations(range(1, d + 1), j):
        # variables 1..j land on the chosen slots in order, the rest fill up
        rest = [s for s in range(1, d + 1) if s not in slots]
        inv = {}
        for v, s in enumerate(slots, start=1):
            inv[s] = v
        for v, s in enumerate(rest, start=j + 1):
            inv[s] = v
        forms = [_unit(d, inv[i + 1] - 1) for i in range(d)]
        total = total + base.substitute(forms)
    if primed:
        total = reindex(total, "flat_j", j)
    return total


def p_op(f, j):
    """f | p_j = (-1)^(d-j) f(x_1,...,x_j, -x_d,...,-x_{j+1})."""
    d = f.d
    if not 0 <= j <= d - 1:
        raise ValueError("need 0 <= j <= d-1")
    forms = [_unit(d, i) for i in range(j)]
    for v in range(d - 1, j - 1, -1):
        forms.append(tuple(-x for x in _unit(d, v)))
    sign = Fraction((-1) ** (d - j))
    return f.substitute(forms).scale(sign)


def _constraint_rows(d, w, operators):
    order = monomial_order(d, w)
    rows = []
    for op in operators:
        images = [op(HomPoly.monomial(d, w, e)) for e in order]
        for target in order:
            row = [img.coeffs.get(target, Fraction(0)) for img in images]
            if any(row):
                rows.append(row)
    return order, rows


def _kernel_basis(d, w, operators):
    """Reduced-echelon kernel of the stacked linear constraints.

    Each operator maps HomPoly -> HomPoly; the kernel of all of them is
    returned as HomPoly elements in graded-lex echelon form.
    """
    order, rows = _constraint_rows(d, w, operators)
    if not rows:
        return [HomPoly.monomial(d, w, e) for e in order]
    ker = RatMatrix(rows).kernel()
    basis = []
    for v in ker:
        basis.append(HomPoly(d, w, dict(zip(order, v))))
    return basis


def _lsh_ops(d):
    ops = [lambda f: f - p_op(f, 0)]
    for j in range(1, d):
        ops.append(lambda f, j=j: sh_op(f, j, primed=True) - p_op(f, j))
    return ops


def lsh_basis(d, w):
    """Echelon basis of the linear shuffle space LSh_w^(d)."""
    if w == 0:
        return []
    return _kernel_basis(d, w, _lsh_ops(d))


def lsh_dim(d, w):
    # rank-only path; avoids the rational kernel for large d
    if w == 0:
        return 0
    order, rows = _constraint_rows(d, w, _lsh_ops(d))
    if not rows:
        return len(order)
    return len(order) - RatMatrix(rows).rank()


# the six named GL_2(Z) elements
IDENTITY = ((1, 0), (0, 1))
EPS = ((0, 1), (1, 0))
GAMMA = ((0, -1), (1, -1))
DELTA = ((1, 0), (0, -1))
EPS_P = ((0, -1), (-1, 0))
GAMMA_P = ((0, 1), (-1, -1))


def mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def gl2_act(P, A):
    """(P|A)(X,Y) = P(aX + bY, cX + dY)."""
    if P.d != 2:
        raise ValueError("the GL_2 action needs two variables")
    (a, b), (c, d) = A
    return P.substitute([(Fraction(a), Fraction(b)), (Fraction(c), Fraction(d))])


def group_ring_act(P, terms):
    """Right action of a group ring element given as [(coeff, [mats...])]."""
    total = HomPoly.zero(P.d, P.w)
    for coeff, mats in terms:
        Q = P
        for A in mats:
            Q = gl2_act(Q, A)
        total = total + Q.scale(coeff)
    return total


def _w_space_ops():
    g2 = mat_mul(GAMMA_P, GAMMA_P)
    return [
        lambda f: f - gl2_act(f, EPS_P),
        lambda f: f + gl2_act(f, GAMMA_P) + gl2_act(f, g2),
    ]


def special_space_basis(kind, w):
    """Kernel bases of the named two-variable spaces."""
    if kind == "W":
        ops = _w_space_ops()
    elif kind == "FShPol":
        # Q(X,Y) + Q(Y,X) = 0 and Q + Q(X+Y,-Y) + Q(-X-Y,X) = 0
        ops = [
            lambda f: f + f.substitute([(0, 1), (1, 0)]),
            lambda f: f
            + f.substitute([(1, 1), (0, -1)])
            + f.substitute([(-1, -1), (1, 0)]),
        ]
    elif kind == "OddPeriod":
        ops = [
            lambda f: f
            - f.substitute([(1, 1), (0, 1)])
            - f.substitute([(1, 1), (1, 0)])
        ]
    else:
        raise ValueError(f"unknown space {kind!r}")
    if w == 0 and kind == "OddPeriod":
        return []
    return _kernel_basis(2, w, ops)


def in_space(P, kind):
    if kind == "LSh":
        checks = [
            (P - p_op(P, 0)).is_zero(),
            (sh_op(P, 1, primed=True) - p_op(P, 1)).is_zero(),
        ]
        return all(checks)
    if kind == "W" or kind == "FShPol":
        return all(op(P).is_zero() for op in _w_space_ops())
    if kind == "OddPeriod":
        return (
            P
            - P.substitute([(1, 1), (0, 1)])
            - P.substitute([(1, 1), (1, 0)])
        ).is_zero()
    raise ValueError(f"unknown space {kind!r}")


def fsh_lsh_iso(P, direction):
    """The inverse isomorphisms between FSh^pol_w and LSh_w^(2), odd w."""
    if P.w % 2 == 0:
        raise ValueError("the isomorphism needs odd degree")
    if direction == "fsh_to_lsh":
        if not in_space(P, "FShPol"):
            raise ValueError("input is not in the Fay-shuffle polynomial space")
        # Q | gamma' (1 - eps') delta
        return group_ring_act(
            P,
            [(1, [GAMMA_P, DELTA]), (-1, [GAMMA_P, EPS_P, DELTA])],
        )
    if direction == "lsh_to_fsh":
        if not in_space(P, "LSh"):
            raise ValueError("input is not in the linear shuffle space")
        # -1/3 P | gamma (1 + eps) delta
        return group_ring_act(
            P,
            [
                (Fraction(-1, 3), [GAMMA, DELTA]),
                (Fraction(-1, 3), [GAMMA, EPS, DELTA]),
            ],
        )
    raise ValueError(f"unknown direction {direction!r}")


def bracket(P, Q):
    """<X^a Y^(w-a), X^b Y^(w-b)> = (-1)^(a+1) C(w,b)^(-1) delta_{a,w-b}."""
    if P.d != 2 or Q.d != 2 or P.w != Q.w:
        raise ValueError("need equal-degree two-variable inputs")
    w = P.w
    total = Fraction(0)
    for (a, _), pc in P.coeffs.items():
        qc = Q.coeffs.get((w - a, a))
        if qc:
            total += pc * qc * Fraction((-1) ** (a + 1), math.comb(w, w - a))
    return total


def pairing(P, Q):
    """(P, Q) = <P|delta, Q>."""
    return bracket(gl2_act(P, DELTA), Q)


def express_in_basis(P, basis):
    """Coefficients of P over a basis of HomPoly, or None if outside."""
    order = monomial_order(P.d, P.w)
    rows = [b.vector(order) for b in basis]
    rows.append(P.vector(order))
    M = RatMatrix(rows).transpose()
    red, pivots = M.rref()
    n = len(basis)
    if n in pivots:
        return None
    coeffs = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        coeffs[c] = red.rows[r][n]
    return coeffs


def span_equal(basis_a, basis_b):
    if not basis_a and not basis_b:
        return True
    if bool(basis_a) != bool(basis_b) or len(basis_a) != len(basis_b):
        return False
    order = monomial_order(basis_a[0].d, basis_a[0].w)
    ra = RatMatrix([b.vector(order) for b in basis_a]).rank()
    rboth = RatMatrix(
        [b.vector(order) for b in basis_a + basis_b]
    ).rank()
    return ra == rboth == len(basis_a)
