from fractions import Fraction

import numpy as np
import pytest

from plutocodes import execution, sim
from plutocodes.fieldlin import InvalidInput
from plutocodes.pluto import pluto_222
from plutocodes.scheme import lift, named_strategy


def rand_blocks(rng, L, M, N, size):
    A = rng.uniform(-1, 1, size=(L * size, M * size))
    B = rng.uniform(-1, 1, size=(M * size, N * size))
    return A, B


def test_blocks_roundtrip():
    X = np.arange(24).reshape(4, 6)
    G = execution.split_blocks(X, 2, 3)
    assert G.shape == (2, 3, 2, 2)
    assert (G[1, 2] == X[2:, 4:]).all()
    assert (execution.join_blocks(G) == X).all()
    with pytest.raises(InvalidInput):
        execution.split_blocks(X, 3, 3)


def test_one_straggler_per_row():
    ts = named_strategy("9x9")
    rng = np.random.default_rng(1)
    A, B = rand_blocks(rng, 4, 4, 4, 8)
    diag = [s * 9 + s for s in range(9)]
    C, tr = execution.run_job(ts, A, B, execution.WorkerPoolConfig(stragglers=diag))
    assert C is not None and tr.residual <= 1e-9
    assert tr.multiplications == ts.n
    assert not set(diag) & set(tr.arrivals)


def test_exact_field_single_straggler():
    ts = lift(pluto_222(1))
    rng = np.random.default_rng(2)
    A = np.array([[Fraction(int(v)) for v in row] for row in rng.integers(-9, 9, (4, 4))], dtype=object)
    B = np.array([[Fraction(int(v)) for v in row] for row in rng.integers(-9, 9, (4, 4))], dtype=object)
    C, tr = execution.run_job(ts, A, B, execution.WorkerPoolConfig(stragglers=[0]))
    assert (C == A.dot(B)).all()
    assert tr.residual == 0.0


def test_four_cycle_stalls():
    ts = named_strategy("9x9")
    rng = np.random.default_rng(3)
    A, B = rand_blocks(rng, 4, 4, 4, 2)
    C, tr = execution.run_job(ts, A, B, execution.WorkerPoolConfig(stragglers=[0, 1, 9, 10]))
    assert C is None and tr.stalled and tr.recovery_count is None


def test_respond_last_recovers_four_cycle():
    ts = named_strategy("9x9")
    A, B = rand_blocks(np.random.default_rng(3), 4, 4, 4, 2)
    cfg = execution.WorkerPoolConfig(stragglers=[0, 1, 9, 10], behavior="last")
    C, tr = execution.run_job(ts, A, B, cfg)
    assert C is not None and tr.recovery_count > ts.n - 4


def test_count_matches_sim():
    C, tr = execution.demo("9x9+53", block=8, stragglers=4, seed=0, threads=2)
    ts = named_strategy("9x9+53")
    assert tr.residual <= 1e-9
    assert tr.recovery_count == sim.recovery_count(ts, tr.arrivals)
    d = tr.to_dict()
    assert len(d["stragglers"]) == 4 and d["recovery_count"] == tr.recovery_count


def test_corrupted_result_is_flagged():
    A, B = rand_blocks(np.random.default_rng(0), 2, 2, 2, 4)
    C = A @ B
    C[0, 0] += 10
    assert execution.verify_job(C, A, B) > 1e-3
    assert execution.verify_job(A @ B, A, B) == 0.0


def test_bad_configs():
    ts = named_strategy("9x9")
    A, B = rand_blocks(np.random.default_rng(0), 4, 4, 4, 2)
    with pytest.raises(InvalidInput):
        execution.run_job(ts, A, B, execution.WorkerPoolConfig(stragglers=81))
    with pytest.raises(InvalidInput):
        execution.run_job(ts, A, B, execution.WorkerPoolConfig(behavior="sometimes"))
    with pytest.raises(InvalidInput):
        execution.run_job(ts, A[:, :7], B, execution.WorkerPoolConfig())
