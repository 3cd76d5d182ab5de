import json

import numpy as np
import pytest
from frozen import LOW_WEIGHT
from hypothesis import given, settings
from hypothesis import strategies as st

from plutocodes.bilinear import (
    block_product,
    by_name,
    c_weights,
    decode_combination,
    evaluate,
    export_algorithm,
    import_algorithm,
    is_valid,
    laderman,
    laderman_reflection,
    laderman_rotation,
    make_algorithm,
    plain_transpose_swap,
    schoolbook,
    strassen,
    strassen_conjugation,
    target_tensor,
    tensor_alg,
    verify_action,
    verify_brent,
)
from plutocodes.fieldlin import InvalidInput

PRIME = 1_000_003


def _grids(dims, rng, block=None, p=PRIME):
    l, m, n = dims
    tail = () if block is None else (block, block)
    A = rng.integers(0, p, size=(l, m) + tail)
    B = rng.integers(0, p, size=(m, n) + tail)
    return A.astype(object), B.astype(object)


@pytest.mark.parametrize("name", ["strassen", "laderman", "schoolbook222", "schoolbook333"])
def test_builtins_satisfy_brent(name):
    alg = by_name(name)
    assert verify_brent(alg) == []
    assert is_valid(alg)


def test_ranks():
    assert strassen().r == 7
    assert laderman().r == 23
    assert schoolbook(2, 3, 4).r == 24


@pytest.mark.parametrize("name", ["strassen", "laderman"])
def test_evaluate_scalar_mod_p(name):
    alg = by_name(name)
    rng = np.random.default_rng(1)
    for _ in range(20):
        A, B = _grids(alg.dims, rng)
        got = evaluate(alg, A, B, modulus=PRIME)
        assert np.array_equal(got % PRIME, block_product(A, B, PRIME))


def test_evaluate_blocks_counts_products():
    alg = strassen()
    rng = np.random.default_rng(2)
    A = rng.standard_normal((2, 2, 3, 3))
    B = rng.standard_normal((2, 2, 3, 3))
    counter = [0]
    C = evaluate(alg, A, B, counter=counter)
    assert counter[0] == 7
    assert np.allclose(C, block_product(A, B))


def test_tensor_of_strassen_multiplies_4x4():
    alg = tensor_alg(strassen(), strassen())
    assert alg.dims == (4, 4, 4) and alg.r == 49
    assert is_valid(alg)
    rng = np.random.default_rng(4)
    A, B = _grids(alg.dims, rng)
    assert np.array_equal(evaluate(alg, A, B, modulus=PRIME), block_product(A, B, PRIME))


def test_target_tensor_shape():
    T = target_tensor((2, 3, 4))
    assert T.shape == (8, 6, 12)
    assert T.sum() == 24


@given(st.integers(0, 6), st.integers(0, 3), st.sampled_from(["a", "b", "d"]), st.sampled_from([-1, 1, 2]))
@settings(max_examples=80, deadline=None)
def test_single_mutation_breaks_strassen(task, idx, which, delta):
    alg = strassen()
    a, b, d = alg.a_enc.copy(), alg.b_enc.copy(), alg.dec.copy()
    if which == "a":
        a[task, idx] += delta
    elif which == "b":
        b[task, idx] += delta
    else:
        d[idx, task] += delta
    bad = make_algorithm("mut", alg.dims, a, b, d)
    assert verify_brent(bad)


def test_export_import_roundtrip():
    alg = laderman()
    doc = export_algorithm(alg)
    back = import_algorithm(doc)
    assert not back.flagged
    assert np.array_equal(back.a_enc, alg.a_enc) and np.array_equal(back.dec, alg.dec)


def test_import_flags_and_rejects():
    doc = json.loads(export_algorithm(strassen()))
    doc["dec"][0][0] += 1
    assert import_algorithm(doc).flagged
    for broken in ({"name": "x"}, dict(doc, dims=[2, 2]), dict(doc, a_enc=[[1.5] * 4] * 7), dict(doc, rank=6)):
        with pytest.raises(InvalidInput):
            import_algorithm(broken)


def test_unknown_name():
    with pytest.raises(InvalidInput):
        by_name("winograd")


def test_strassen_conjugation_cycles():
    sp = verify_action(strassen(), strassen_conjugation())
    assert sp is not None
    assert sp.order() == 3
    assert str(sp) == "(2 3 7)(4 5 6)"


def test_laderman_rotation_cycles():
    sp = verify_action(laderman(), laderman_rotation())
    assert sp.order() == 4
    cycles = {frozenset(c) for c in sp.cycles()}
    expected = [(6, 14), (1, 3, 10, 11), (4, 16, 7, 12), (5, 17, 9, 13), (15, 2, 18, 8), (20, 21, 23, 22)]
    assert cycles == {frozenset(c) for c in expected}
    # cyclic order as well as membership
    for c in expected:
        for k, s in enumerate(c):
            assert sp.perm[s - 1] + 1 == c[(k + 1) % len(c)]


def test_laderman_reflection():
    sp = verify_action(laderman(), laderman_reflection())
    assert str(sp) == "(1 3)(2 5)(8 9)(10 11)(12 16)(13 18)(15 17)(21 22)"
    assert sp.order() == 2
    assert verify_action(laderman(), plain_transpose_swap()) is None


# low-weight C combinations of the 3x3 algorithm, as (C weights, task weights)
@pytest.mark.parametrize("entries,tasks", LOW_WEIGHT)
def test_low_weight_combinations(entries, tasks):
    alg = laderman()
    got = decode_combination(alg, c_weights(alg.dims, entries))
    want = np.zeros(23, dtype=np.int64)
    for t, v in tasks.items():
        want[t - 1] = v
    assert got.tolist() == want.tolist()
