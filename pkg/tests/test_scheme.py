import numpy as np
import pytest

from plutocodes import decode
from plutocodes.bilinear import block_product
from plutocodes.pluto import BETA_GROUP, pluto_222
from plutocodes.scheme import (
    BETA_SECOND,
    CATALOG,
    InvalidIdentification,
    UnsupportedComposition,
    beta_checksum,
    evaluate,
    lift,
    named_strategy,
    normalize_label,
    rho,
    search_beta_group,
    task_products,
    tensor,
    union,
)

PRIME = 1_000_003

# task counts: a tensor multiplies sizes; a union adds parts and subtracts shared tasks
COUNTS = {
    "9x9": 9 * 9,
    "9x9+53": 81 + 4,
    "7x9+53": 63 + 4,
    "7x9+9x7+53": 63 + 14 + 4,
    "9x9x9": 729,
    "cyc7x7x9": 343 + 3 * 98,
    "cyc7x53": 343 + 3 * 7 * 4,
    "cyc7x57": 343 + 3 * 7 * 8,
    "26x29": 26 * 29,
    "9x53": 9 * 53,
}


@pytest.mark.parametrize("label,n", sorted(COUNTS.items()))
def test_task_counts(label, n):
    assert named_strategy(label).n == n


@pytest.mark.parametrize("label", CATALOG)
def test_catalog_evaluates_product(label):
    ts = named_strategy(label)
    rng = np.random.default_rng(7)
    L, M, N = ts.dims
    A = rng.integers(0, PRIME, (L, M)).astype(object)
    B = rng.integers(0, PRIME, (M, N)).astype(object)
    assert np.array_equal(evaluate(ts, A, B, PRIME), block_product(A, B, PRIME))


@pytest.mark.parametrize("label", ["9x9", "9x9+53", "7x9+9x7+53", "cyc7x53", "26x29"])
def test_relations_hold_on_products(label):
    ts = named_strategy(label)
    rng = np.random.default_rng(8)
    L, M, N = ts.dims
    A = rng.integers(0, 1000, (L, M))
    B = rng.integers(0, 1000, (M, N))
    p = ts.field()
    prods = task_products(ts, A, B, p)
    K = decode.full_kernel(ts)
    assert K.shape[0] > 0
    assert not np.any((K % p) @ prods % p)


def test_block_entries_evaluate():
    ts = named_strategy("9x9+53")
    rng = np.random.default_rng(9)
    A = rng.standard_normal((4, 4, 3, 3))
    B = rng.standard_normal((4, 4, 3, 3))
    C = evaluate(ts, A, B)
    assert np.allclose(C, block_product(A, B))


def test_tensor_layout_and_core():
    x = lift(pluto_222(1))
    ts = tensor(x, x)
    assert ts.names[9 * 2 + 5] == "S3.S6"
    assert ts.core.reshape(9, 9)[:7, :7].all()
    assert not ts.core.reshape(9, 9)[7:, :].any()
    assert ts.levels == ((2, 2, 2), (2, 2, 2))


def test_rho_has_order_three():
    ts = named_strategy("7x7x9")
    r3 = rho(rho(rho(ts)))
    assert np.array_equal(r3.a, ts.a) and np.array_equal(r3.b, ts.b) and np.array_equal(r3.Y, ts.Y)
    assert rho(ts).names[1] == "S1.S2.S1"


def test_union_shares_core():
    ts = named_strategy("9x9+53")
    assert int(ts.core.sum()) == 49


def test_union_errors():
    x = lift(pluto_222(1))
    y = tensor(x, x)
    with pytest.raises(InvalidIdentification):
        union([y, y], identify=[((0, 0), (1, 1))])
    with pytest.raises(UnsupportedComposition):
        tensor(named_strategy("9x9+53"), x)


def test_normalize_label():
    assert normalize_label("9·9 ∪ 53") == "9x9+53"
    assert normalize_label("Cyc 7·53") == "cyc7x53"
    assert named_strategy("7·9 ∪ 9·7 ∪ 53") is named_strategy("7x9+9x7+53")


def test_square_checksum_matrix():
    grp = beta_checksum(named_strategy("9x9"), *BETA_GROUP)
    M = grp.core_matrix
    assert M.shape == (7, 7)
    assert (M == M.T).all()
    assert (M[0, 0], M[1, 1], M[3, 3]) == (7, 3, 12)


def test_backup_names_carry_rotation():
    ts = named_strategy("pillars")
    names = [nm for nm in ts.names if nm.endswith("B53)") or nm.endswith("B53")]
    assert len(names) == 27
    assert "rho(S1.B53)" in names and "rho2(S9.B53)" in names


def test_second_square_group_search():
    assert search_beta_group([BETA_GROUP]) == BETA_SECOND
