import random
from fractions import Fraction

import pytest

from symeis.ranks import (
    RatMatrix,
    appendix_reduction,
    binom_identity,
    bkm,
    matrices,
    random_matrix,
    rank_oracle,
    _bareiss_rank,
    _modular_rank,
)


def test_bkm_examples():
    assert bkm(5, 1, 1) == 1
    assert bkm(5, 2, 1) == 2
    assert bkm(7, 2, 1) == 0
    with pytest.raises(ValueError):
        bkm(6, 1, 1)
    with pytest.raises(ValueError):
        bkm(5, 3, 1)


def test_full_matrix_displays():
    C5, S5 = matrices(5)
    assert C5.rows == ((1,), (2,))
    assert S5.rows == ((1,),)
    C7, S7 = matrices(7)
    assert C7.rows == ((1, 1), (0, 10), (2, 4))
    assert S7.rows == ((1, 1), (2, 4))
    _, S9 = matrices(9)
    assert S9.rows == ((1, 1, 1), (0, 6, 21), (2, 4, 6))
    C11, S11 = matrices(11)
    assert C11.rows[2] == (0, 0, 21, 126)
    assert S11.rows == ((1, 1, 1), (0, 6, 15), (2, 4, 6))
    _, S13 = matrices(13)
    assert S13.rows == ((1, 1, 1, 1), (0, 6, 15, 28), (0, 4, 20, 56), (2, 4, 6, 8))
    _, S15 = matrices(15)
    assert S15.rows == (
        (1, 1, 1, 1, 1),
        (0, 6, 15, 28, 45),
        (0, 0, 15, 70, 220),
        (0, 4, 20, 56, 120),
        (2, 4, 6, 8, 10),
    )


def test_rank_basics():
    assert RatMatrix([[0, 0], [0, 0]]).rank() == 0
    assert RatMatrix([[1, 2], [2, 4]]).rank() == 1
    assert RatMatrix([[Fraction(1, 2), 0], [0, 3]]).rank() == 2


def test_rank_vs_oracle():
    rng = random.Random(7)
    for _ in range(100):
        M = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert M.rank() == rank_oracle(M)


def test_modular_rank_matches_bareiss():
    rng = random.Random(11)
    for _ in range(25):
        M = random_matrix(rng, rng.randint(2, 8), rng.randint(2, 8))
        rows = M._int_rows()
        assert _modular_rank(rows, 1073741789) == _bareiss_rank(rows)


def test_kernel():
    M = RatMatrix([[1, 2, 3], [2, 4, 6]])
    ker = M.kernel()
    assert len(ker) == 2
    for v in ker:
        for row in M.rows:
            assert sum(a * b for a, b in zip(row, v)) == 0


def test_rref_idempotent():
    M = random_matrix(3, 4, 5)
    red, pivots = M.rref()
    again, pivots2 = red.rref()
    assert red == again and pivots == pivots2


def test_binomial_identity_exhaustive():
    for j in range(41):
        for a in range(41):
            lhs, rhs = binom_identity(j, a)
            assert lhs == rhs, (j, a)


def test_binomial_identity_corollary():
    for m in range(1, 41):
        for lp in range(1, 41):
            lhs, rhs = binom_identity(m, lp, mode="corollary")
            assert lhs == rhs, (m, lp)


def test_binomial_identity_examples():
    assert binom_identity(0, 0) == (0, 0)
    assert binom_identity(2, 1) == (2, 2)


def test_selected_submatrix_full_rank():
    for k in range(5, 42, 2):
        _, S = matrices(k)
        assert S.rank() == k // 3, k


def test_appendix_reduction():
    for k in range(5, 42, 2):
        assert appendix_reduction(k), k


def test_full_matrix_rank_bound():
    # the selected-row certificate forces rank C_k = kappa when K >= kappa
    for k in range(5, 24, 2):
        C, _ = matrices(k)
        assert C.rank() >= k // 3, k


def test_json_roundtrip():
    M = RatMatrix([[Fraction(1, 2), 3]])
    j = M.to_json()
    assert j == {"nrows": 1, "ncols": 2, "rows": [["1/2", "3"]]}
