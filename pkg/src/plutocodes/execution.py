"""Coded block multiplication through a simulated manager and worker pool.

The manager forms each task's two block combinations, workers multiply
them concurrently, and the manager reads results in a fixed arrival order.
Completion is declared at the first prefix the peeling decoder accepts;
C is then assembled from an exact rational combination of those products.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import decode, sim
from .fieldlin import InvalidInput, rank_mod, solve_left_rational
from .scheme import TaskSet


@dataclass
class WorkerPoolConfig:
    seed: int = 0
    stragglers: tuple | int = ()  # explicit task ids or a count drawn at random
    behavior: str = "never"  # "never" (never respond) or "last" (respond last)
    threads: int = 4
    stall_cap: int = decode.STALL_CAP


@dataclass
class JobTranscript:
    arrivals: list
    stragglers: list
    recovery_count: int | None
    log: list
    multiplications: int
    residual: float | None = None
    stalled: bool = False
    names: list = field(default_factory=list, repr=False)

    def to_dict(self):
        return {
            "arrivals": [self.names[g] for g in self.arrivals],
            "stragglers": [self.names[g] for g in self.stragglers],
            "recovery_count": self.recovery_count,
            "stalled": self.stalled,
            "multiplications": self.multiplications,
            "residual": self.residual,
            "log": [
                {"rule": rule, "tasks": [self.names[g] for g in ids]} for rule, _, ids in self.log
            ],
        }


def split_blocks(X: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """View a matrix as a (rows x cols) grid of equal blocks."""
    X = np.asarray(X)
    R, C = X.shape
    if R % rows or C % cols:
        raise InvalidInput(f"{R}x{C} matrix does not split into a {rows}x{cols} grid")
    return X.reshape(rows, R // rows, cols, C // cols).swapaxes(1, 2)


def join_blocks(G: np.ndarray) -> np.ndarray:
    r, c, br, bc = G.shape
    return G.swapaxes(1, 2).reshape(r * br, c * bc)


def _combine(coeffs, blocks):
    """Sum of coefficient times block over a flattened block grid."""
    out = None
    exact = blocks[0].dtype == object
    for w, X in zip(coeffs, blocks):
        if w == 0:
            continue
        w = Fraction(w) if isinstance(w, Fraction) else int(w)
        term = X * (w if exact else float(w))
        out = term if out is None else out + term
    if out is None:
        out = blocks[0] * 0
    return out


def straggler_set(ts: TaskSet, cfg: WorkerPoolConfig) -> list[int]:
    if isinstance(cfg.stragglers, (int, np.integer)):
        k = int(cfg.stragglers)
        if not 0 <= k < ts.n:
            raise InvalidInput("straggler count must be below the task count")
        rng = np.random.default_rng([cfg.seed, 1])
        return sorted(int(g) for g in rng.choice(ts.n, size=k, replace=False))
    out = sorted(set(int(g) for g in cfg.stragglers))
    if len(out) >= ts.n or any(not 0 <= g < ts.n for g in out):
        raise InvalidInput("bad straggler ids")
    return out


def arrival_stream(ts: TaskSet, cfg: WorkerPoolConfig, stragglers) -> list[int]:
    perm = sim.trial_order(ts.n, cfg.seed, 0).tolist()
    slow = set(stragglers)
    stream = [g for g in perm if g not in slow]
    if cfg.behavior == "last":
        stream += [g for g in perm if g in slow]
    elif cfg.behavior != "never":
        raise InvalidInput(f"unknown straggler behavior {cfg.behavior!r}")
    return stream


def _decode_weights(ts: TaskSet, arrived) -> list[list[Fraction]]:
    """Rational weights W with W @ (arrived task tensors) = C-entry tensors."""
    T = ts.tensors()
    Z = ts.Y @ T
    S = list(arrived)
    # keep an independent subset of rows to shrink the rational solve
    p = ts.field()
    basis = []
    for g in S:
        trial = basis + [g]
        if rank_mod(T[trial], p) == len(trial):
            basis = trial
    W = solve_left_rational(T[basis], Z)
    if W is None:
        return None, basis
    return W, basis


def run_job(ts: TaskSet, A, B, cfg: WorkerPoolConfig | None = None):
    """Multiply A and B with the coded scheme ``ts``; returns (C or None, transcript)."""
    cfg = cfg or WorkerPoolConfig()
    L, M, N = ts.dims
    A = np.asarray(A)
    B = np.asarray(B)
    Ag = split_blocks(A, L, M)
    Bg = split_blocks(B, M, N)
    if Ag.shape[3] != Bg.shape[2]:
        raise InvalidInput("inner block sizes differ")
    a_blocks = [Ag[i, j] for i in range(L) for j in range(M)]
    b_blocks = [Bg[j, k] for j in range(M) for k in range(N)]
    stragglers = straggler_set(ts, cfg)
    stream = arrival_stream(ts, cfg, stragglers)

    count = [0]
    lock = threading.Lock()

    def work(t):
        left = _combine(ts.a[t], a_blocks)
        right = _combine(ts.b[t], b_blocks)
        with lock:
            count[0] += 1
        return left @ right

    dec = decode.peeler(ts)
    k = dec.arrival_count(stream, cfg.stall_cap)
    with ThreadPoolExecutor(max(1, cfg.threads)) as pool:
        futures = {t: pool.submit(work, t) for t in range(ts.n)}
        results = {}
        used = stream if k is None else stream[:k]
        for t in used:  # single ordered completion stream, no lookahead
            results[t] = futures[t].result()
        for f in futures.values():
            f.result()
    state = decode.peel(ts, used, stall_cap=cfg.stall_cap)
    transcript = JobTranscript(
        arrivals=stream,
        stragglers=stragglers,
        recovery_count=k,
        log=state.log,
        multiplications=count[0],
        stalled=k is None,
        names=list(ts.names),
    )
    if k is None:
        return None, transcript
    W, basis = _decode_weights(ts, used)
    if W is None:
        transcript.stalled = True
        return None, transcript
    products = [results[g] for g in basis]
    C_blocks = [_combine(w, products) for w in W]
    C = np.empty((L, N) + C_blocks[0].shape, dtype=np.result_type(C_blocks[0], float) if A.dtype != object else object)
    for idx, blk in enumerate(C_blocks):
        C[idx // N, idx % N] = blk
    C = join_blocks(C)
    transcript.residual = verify_job(C, A, B)
    return C, transcript


def verify_job(C, A, B) -> float:
    """Relative Frobenius residual of C against the direct product."""
    C = np.asarray(C)
    ref = np.asarray(A) @ np.asarray(B)
    if C.dtype == object or ref.dtype == object:
        diff = C - ref
        if all(x == 0 for x in diff.ravel()):
            return 0.0
        num = sum(float(x) ** 2 for x in diff.ravel()) ** 0.5
        den = sum(float(x) ** 2 for x in ref.ravel()) ** 0.5
        return num / den if den else float("inf")
    den = np.linalg.norm(ref)
    num = np.linalg.norm(C - ref)
    return float(num / den) if den else float(num)


def demo(label: str = "9x9+53", block: int = 32, stragglers=4, seed: int = 0, behavior: str = "never", threads: int = 4):
    from .scheme import named_strategy

    ts = named_strategy(label)
    L, M, N = ts.dims
    rng = np.random.default_rng(seed)
    A = rng.uniform(-1, 1, size=(L * block, M * block))
    B = rng.uniform(-1, 1, size=(M * block, N * block))
    cfg = WorkerPoolConfig(seed=seed, stragglers=stragglers, behavior=behavior, threads=threads)
    return run_job(ts, A, B, cfg)


__all__ = [
    "WorkerPoolConfig",
    "JobTranscript",
    "run_job",
    "verify_job",
    "split_blocks",
    "join_blocks",
    "arrival_stream",
    "straggler_set",
    "demo",
]
