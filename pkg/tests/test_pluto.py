from itertools import combinations

import numpy as np
import pytest
import sympy

from frozen import PARITIES_222, PARITIES_333, STRASSEN_BACKUPS
from plutocodes import span
from plutocodes.bilinear import strassen, strassen_conjugation
from plutocodes.fieldlin import InvalidInput, det_exact, rank_mod
from plutocodes.pluto import (
    code_by_name,
    code_document,
    epc_is_mds,
    group_identity_holds,
    pluto_222,
    pluto_333,
    pluto_epc,
    symmetry_orbit,
    vector_checksum,
    verify_claims,
)

def test_strassen_backup_definitions():
    code = pluto_222(3)
    assert code.N == 13
    a = code.a_enc[7:].tolist()
    b = code.b_enc[7:].tolist()
    assert [(x, y) for x, y in zip(a, b)] == STRASSEN_BACKUPS


@pytest.mark.parametrize("k", [0, 1, 2])
def test_strassen_parities(k):
    grp = pluto_222(3).groups[k]
    assert grp.parity_vector.tolist() == PARITIES_222[k]
    assert grp.weights.tolist() == [[1, 1]]


@pytest.mark.parametrize("k", [0, 1])
def test_laderman_parities(k):
    grp = pluto_333(2).groups[k]
    assert grp.parity_vector.tolist() == PARITIES_333[k]
    assert grp.size == 3


def test_laderman_backup_definitions():
    code = pluto_333(2)
    # first backup: (A11 + 2A21 + 3A31)(2B11 - B12 + 3B13)
    a = np.zeros(9, dtype=int)
    a[[0, 3, 6]] = [1, 2, 3]
    b = np.zeros(9, dtype=int)
    b[[0, 1, 2]] = [2, -1, 3]
    assert code.a_enc[23].tolist() == a.tolist()
    assert code.b_enc[23].tolist() == b.tolist()


def test_relations_hold_on_task_tensors():
    for code in (pluto_222(3), pluto_333(2), pluto_epc()):
        T = span.task_tensors(code.a_enc, code.b_enc)
        assert not np.any((code.relations() @ T) % code.field())
        assert code.kernel_is_complete()
        for grp in code.groups:
            assert group_identity_holds(code.base, grp)


@pytest.mark.parametrize("name,tolerated", [("9", 1), ("11", 2), ("13", 3), ("26", 1), ("29", 2)])
def test_guarantees(name, tolerated):
    rep = verify_claims(code_by_name(name))
    assert rep["tolerates"] == tolerated


def test_merged_check_is_mds_for_two_groups():
    H = pluto_222(2).merged_check()
    assert H.shape == (2, 9)
    assert all(np.any(H[:, j]) for j in range(9))
    dets = [det_exact(H[:, list(c)]) for c in combinations(range(9), 2)]
    assert len(dets) == 36 and all(d != 0 for d in dets)


def test_three_group_zero_minors():
    rep = verify_claims(pluto_222(3), max_erasures=4)
    assert rep["base_zero_minors"] == [(0, 1, 3), (0, 2, 4), (0, 5, 6)]
    assert rep["merged_mds"] is False


def _aggregate_generator(H, combos):
    """Generator (columns = aggregated symbols) of the code checked by H."""
    K = sympy.Matrix(H).nullspace()
    V = sympy.Matrix.hstack(*K).T  # rows span the code
    cols = []
    for combo in combos:
        col = sympy.zeros(V.shape[0], 1)
        for j, c in combo.items():
            col += c * V[:, j]
        cols.append(col)
    return sympy.Matrix.hstack(*cols)


def _nonuple(replaced):
    # symbols 0..6 base, 7..9 merged backups; ``replaced`` maps index -> combo
    out = []
    for j in range(10):
        if j == 0:
            continue
        out.append(replaced.get(j, {j: 1}))
    return out


@pytest.mark.parametrize(
    "replaced",
    [
        {1: {1: 1, 0: -1}, 3: {3: 1, 0: 1}},
        {2: {2: 1, 0: 1}, 4: {4: 1, 0: -1}},
        {5: {5: 1, 0: 1}, 6: {6: 1, 0: 1}},
    ],
)
def test_aggregated_nonuples_are_mds(replaced):
    H = pluto_222(3).merged_check().tolist()
    G = _aggregate_generator(H, _nonuple(replaced))
    assert G.rank() == 6
    # MDS: every 6 columns independent
    for cols in combinations(range(9), 6):
        assert G[:, list(cols)].rank() == 6


def test_merged_minor_primes():
    rep = verify_claims(pluto_222(3), max_erasures=4)
    assert rep["minor_primes"] == {2, 3, 5, 7, 11, 13, 19}


def test_laderman_merged_check_mds():
    H = pluto_333(2).merged_check()
    assert H.shape == (2, 25)
    assert all(det_exact(H[:, list(c)]) != 0 for c in combinations(range(25), 2))


def test_epc_code():
    code = pluto_epc(strassen())
    assert code.N == 9
    assert epc_is_mds(code)
    assert verify_claims(code)["tolerates"] == 1


def test_symmetry_orbit_of_first_group():
    orbit = symmetry_orbit(strassen(), strassen_conjugation(), [1, 2], [-1, 1])
    assert len(orbit) == 3
    # parity vectors of the orbit agree with the stored groups up to sign and task permutation
    stored = sorted(sorted(abs(int(x)) for x in v) for v in PARITIES_222)
    got = sorted(sorted(abs(int(x)) for x in g.parity_vector) for g in orbit)
    assert got == stored


def test_code_document_and_names():
    import json

    doc = json.loads(code_document(pluto_222(2)))
    assert doc["N"] == 11 and len(doc["groups"]) == 2
    assert doc["groups"][0]["g"] == [1, 2]
    with pytest.raises(InvalidInput):
        code_by_name("8")


def test_vector_checksum_rejects_zero():
    with pytest.raises(InvalidInput):
        vector_checksum(strassen(), [0, 0], [1, 1])


def test_charon_two_erasures_and_structure():
    from plutocodes.pluto import charon_code

    code = charon_code()
    assert code.N == 63
    assert code.relations().shape == (4, 63)
    assert code.kernel_is_complete()
    K, Y = code.relations(), code.decode_matrix()
    assert span.decodable_batch(K, Y, span.erasure_sets(63, 2)).all()
    assert rank_mod(K) == 4
