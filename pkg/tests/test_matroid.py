import numpy as np
import pytest
from frozen import STRASSEN_POLY
from hypothesis import given, settings
from hypothesis import strategies as st

from plutocodes.bilinear import laderman, strassen
from plutocodes.fieldlin import InvalidInput, rank_mod
from plutocodes.matroid import (
    GroundMatrix,
    corank_nullity,
    corank_nullity_naive,
    decode_matroid_matrix,
    divide_by_xy_minus_one,
    multiply_by_xy_minus_one,
    parse_poly,
    with_characteristic,
)

def test_parse_poly_roundtrip():
    p = parse_poly(STRASSEN_POLY)
    assert p[(4, 0)] == 1 and p[(1, 1)] == 15 and p[(0, 0)] == 20
    assert parse_poly(str(p)) == p
    q = parse_poly("−4 + 4xy")
    assert q.coeffs == {(0, 0): -4, (1, 1): 4}
    assert str(q) == "-4 + 4xy"


def test_strassen_poly_all_characteristics():
    gm = decode_matroid_matrix(strassen())
    expected = parse_poly(STRASSEN_POLY)
    for char in (None, 2, 3):
        assert corank_nullity(with_characteristic(gm, char)) == expected
    assert expected.evaluate(1, 1) == 128


def test_augmented_form_has_same_matroid():
    plain = corank_nullity(decode_matroid_matrix(strassen()))
    aug = decode_matroid_matrix(strassen(), augment=True)
    assert (aug.matrix.sum(axis=0) == 0).all()
    assert corank_nullity(aug) == plain


def test_fast_matches_naive_on_strassen():
    gm = decode_matroid_matrix(strassen())
    for char in (None, 2):
        g = with_characteristic(gm, char)
        assert corank_nullity(g) == corank_nullity_naive(g)


@given(
    st.integers(1, 4).flatmap(
        lambda r: st.lists(st.lists(st.integers(-2, 2), min_size=r, max_size=r), min_size=1, max_size=9)
    ),
    st.sampled_from([None, 2, 3]),
)
@settings(max_examples=60, deadline=None)
def test_fast_matches_naive(cols, char):
    gm = GroundMatrix(np.array(cols, dtype=np.int64).T, char)
    poly = corank_nullity(gm)
    assert poly == corank_nullity_naive(gm)
    n = gm.matrix.shape[1]
    # every subset contributes one monomial
    assert poly.evaluate(1, 1) == 2**n


@given(st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 5)), st.integers(-50, 50).filter(bool), max_size=8))
def test_multiply_then_divide(coeffs):
    from plutocodes.matroid import CorankNullityPoly

    p = CorankNullityPoly(coeffs)
    assert divide_by_xy_minus_one(multiply_by_xy_minus_one(p)) == p


def test_divide_detects_remainder():
    assert divide_by_xy_minus_one(parse_poly("x + 1")) is None
    assert divide_by_xy_minus_one(parse_poly("4xy - 4")) == parse_poly("4")


def test_too_many_columns():
    with pytest.raises(InvalidInput):
        corank_nullity(GroundMatrix(np.ones((2, 31), dtype=np.int64)))


def test_laderman_rank_and_size():
    gm = decode_matroid_matrix(laderman())
    assert gm.matrix.shape == (9, 23)
    assert rank_mod(gm.matrix, gm.modulus) == 9
