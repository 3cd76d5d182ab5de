from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from plutocodes.fieldlin import (
    P,
    InvalidInput,
    det_exact,
    in_span,
    is_prime,
    left_kernel_mod,
    left_kernel_rational,
    parse_field,
    prime_factors,
    rank,
    rank_batch,
    rank_mod,
    rank_rational,
    rref_mod,
    solve_left_rational,
    to_mod,
    zero_minors,
)


def small_matrices(max_rows=6, max_cols=6, bound=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


@given(small_matrices())
@settings(max_examples=150, deadline=None)
def test_rational_rank_matches_sympy(rows):
    assert rank_rational(rows) == sympy.Matrix(rows).rank()


@given(small_matrices(), st.sampled_from([2, 3, 7, P]))
@settings(max_examples=150, deadline=None)
def test_mod_rank_matches_sympy(rows, p):
    M = sympy.Matrix(rows).applyfunc(lambda x: x % p)
    expected = M.rank(iszerofunc=lambda x: x % p == 0) if p == P else _sympy_rank_mod(rows, p)
    assert rank_mod(np.array(rows), p) == expected


def _sympy_rank_mod(rows, p):
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF

    dm = DomainMatrix([[GF(p)(x) for x in row] for row in rows], (len(rows), len(rows[0])), GF(p))
    return dm.rank()


@given(small_matrices(max_rows=7, max_cols=5))
@settings(max_examples=100, deadline=None)
def test_left_kernel_mod_is_a_kernel(rows):
    M = np.array(rows)
    K = left_kernel_mod(M)
    assert K.shape[0] == M.shape[0] - rank_mod(M)
    assert not np.any((K @ M) % P)
    if K.shape[0]:
        assert rank_mod(K) == K.shape[0]


@given(small_matrices(max_rows=6, max_cols=4))
@settings(max_examples=60, deadline=None)
def test_left_kernel_rational(rows):
    K = left_kernel_rational(rows)
    assert len(K) == len(rows) - rank_rational(rows)
    for z in K:
        for c in range(len(rows[0])):
            assert sum(z[i] * rows[i][c] for i in range(len(rows))) == 0


def test_rank_batch_matches_single():
    rng = np.random.default_rng(3)
    mats = rng.integers(-2, 3, size=(200, 4, 5))
    got = rank_batch(mats, 5)
    assert got.tolist() == [rank_mod(m, 5) for m in mats]


@given(small_matrices(max_rows=4, max_cols=4))
@settings(max_examples=60, deadline=None)
def test_det_exact(rows):
    n = min(len(rows), len(rows[0]))
    sq = [row[:n] for row in rows[:n]]
    assert det_exact(sq) == sympy.Matrix(sq).det()


def test_rref_mod_pivots():
    R, piv = rref_mod([[2, 4, 1], [1, 2, 3]], 7)
    assert piv == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_solve_left_rational():
    M = [[1, 2], [3, 4], [5, 6]]
    T = [[4, 6], [1, 1]]
    W = solve_left_rational(M, T)
    for w, t in zip(W, T):
        assert [sum(w[i] * M[i][c] for i in range(3)) for c in range(2)] == t
    assert solve_left_rational([[1, 0], [2, 0]], [[0, 1]]) is None


def test_in_span_and_fields():
    assert in_span([[2, 4], [1, 0]], [[1, 2]]) == [True, False]
    assert in_span([[1, 1]], [[1, 0], [0, 2]], field=2) == [False]
    assert rank([[1, 1], [1, -1]], 2) == 1
    assert rank([[Fraction(1, 2), 1], [1, 2]]) == 1
    with pytest.raises(InvalidInput):
        to_mod([[Fraction(1, 3)]], 3)


def test_zero_minors_rational_and_mod():
    # minors over column pairs: (0,1) -> 0, (0,2) -> -5, (1,2) -> -10
    M = [[1, 2, 3], [2, 4, 1]]
    assert zero_minors(M, 2) == [(0, 1)]
    assert zero_minors(M, 2, field=5) == [(0, 1), (0, 2), (1, 2)]
    assert zero_minors(M, 2, field=3) == [(0, 1)]


def test_parse_field_and_primes():
    assert parse_field("rational") == "rational"
    assert parse_field("fp:101") == 101
    with pytest.raises(InvalidInput):
        parse_field("fp:100")
    with pytest.raises(InvalidInput):
        parse_field("reals")
    assert is_prime(P) and not is_prime(1) and not is_prime(91)
    assert prime_factors(-19 * 4) == {2, 19}
