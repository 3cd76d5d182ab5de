"""Span-membership decodability on raw task data.

A task set with task tensors ``T`` (one row per task), a decode matrix ``Y``
with ``Y @ T`` equal to the C-entry tensors, and a basis ``K`` of the left
kernel of ``T`` can recover C from the tasks outside an unknown set ``U``
iff the rows of ``Y[:, U]`` lie in the row space of ``K[:, U]``.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .fieldlin import P, left_kernel_mod, rank_batch, rank_mod


def task_tensors(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return np.einsum("sa,sb->sab", a, b).reshape(a.shape[0], -1)


def kernel_basis(a, b, p: int = P) -> np.ndarray:
    """Left kernel of the task tensors over F_p (rows are relations)."""
    return left_kernel_mod(task_tensors(a, b), p)


def relation_rank(relations, p: int = P) -> int:
    relations = np.asarray(relations)
    if relations.size == 0:
        return 0
    return rank_mod(relations, p)


def decodable_unknown(K, Y, unknown, p: int = P) -> bool:
    U = np.asarray(sorted(unknown), dtype=np.int64)
    if U.size == 0:
        return True
    Yu = np.mod(Y[:, U], p)
    Yu = Yu[np.any(Yu != 0, axis=1)]
    if Yu.shape[0] == 0:
        return True
    Ku = np.mod(K[:, U], p) if K.shape[0] else np.zeros((0, U.size), dtype=np.int64)
    Ku = Ku[np.any(Ku != 0, axis=1)]
    if Ku.shape[0] == 0:
        return False
    r0 = rank_mod(Ku, p)
    return rank_mod(np.vstack([Ku, Yu]), p) == r0


def decodable_batch(K, Y, unknown_sets, p: int = P, chunk: int = 20000) -> np.ndarray:
    """Vectorized :func:`decodable_unknown` for equal-size unknown sets."""
    U = np.asarray(unknown_sets, dtype=np.int64)
    if U.ndim != 2:
        raise ValueError("unknown_sets must be a 2-D array")
    nsets, e = U.shape
    if e == 0:
        return np.ones(nsets, dtype=bool)
    K = np.mod(np.asarray(K, dtype=np.int64), p)
    Y = np.mod(np.asarray(Y, dtype=np.int64), p)
    Y = Y[np.any(Y != 0, axis=1)]
    K = K[np.any(K != 0, axis=1)] if K.shape[0] else K
    out = np.empty(nsets, dtype=bool)
    for lo in range(0, nsets, chunk):
        idx = U[lo : lo + chunk]
        Yu = Y[:, idx].transpose(1, 0, 2)
        if K.shape[0] == 0:
            out[lo : lo + chunk] = ~np.any(Yu != 0, axis=(1, 2))
            continue
        Ku = K[:, idx].transpose(1, 0, 2)
        r0 = rank_batch(Ku, p)
        r1 = rank_batch(np.concatenate([Ku, Yu], axis=1), p)
        out[lo : lo + chunk] = r0 == r1
    return out


def erasure_sets(n: int, e: int) -> np.ndarray:
    if e == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(combinations(range(n), e)), dtype=np.int64).reshape(-1, e)


def correctable_counts(K, Y, n: int, max_erasures: int, p: int = P, budget: int = 5_000_000, stop_at_zero=True):
    """``{e: (correctable, total)}`` for erasure sizes 0..max_erasures."""
    out = {}
    for e in range(max_erasures + 1):
        total = comb(n, e)
        if total > budget:
            raise ValueError(f"C({n},{e}) = {total} exceeds the enumeration budget {budget}")
        ok = int(decodable_batch(K, Y, erasure_sets(n, e), p).sum())
        out[e] = (ok, total)
        if stop_at_zero and ok == 0:
            break
    return out
