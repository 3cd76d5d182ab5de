"""Recovery-count distributions under uniformly random arrival order.

The recovery count of an arrival order is the length of its shortest
prefix from which C can be decoded. Decodability is monotone in the set
of arrived tasks, so ``P(count <= k)`` equals the fraction of decodable
k-subsets, which gives the exact mode; the Monte Carlo mode samples
permutations.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import decode, span
from .fieldlin import InvalidInput
from .scheme import TaskSet

SAMPLES = 5000
BUDGET = 5_000_000


class BudgetExceeded(ValueError):
    pass


@dataclass
class RecoveryDistribution:
    n: int
    mode: str  # "exact" or "empirical"
    cdf: list  # cdf[k] = P(count <= k), k = 0..n
    decoder: str
    label: str = ""
    samples: int | None = None
    seed: int | None = None
    counts: list = field(default_factory=list, repr=False)

    def at(self, k: int) -> float:
        return float(self.cdf[k])

    def quantile(self, q: float) -> int:
        for k, v in enumerate(self.cdf):
            if v >= q:
                return k
        return self.n

    def rows(self):
        return [
            {"k": k, "cdf": float(v), "mode": self.mode, "scheme_label": self.label, "decoder": self.decoder}
            for k, v in enumerate(self.cdf)
        ]


# -------------------------------------------------------------- exact mode


def decodable_counts(ts: TaskSet, decoder: str = "oracle", budget: int = BUDGET) -> dict:
    """``{e: number of decodable unknown sets of size e}`` until the first zero."""
    out = {}
    K = decode.full_kernel(ts) if decoder == "oracle" else None
    dec = decode.peeler(ts) if decoder != "oracle" else None
    p = ts.field()
    for e in range(ts.n + 1):
        total = math.comb(ts.n, e)
        if total > budget:
            raise BudgetExceeded(
                f"C({ts.n},{e}) = {total} erasure sets exceed the budget {budget}; use monte_carlo"
            )
        sets = span.erasure_sets(ts.n, e)
        if dec is None:
            ok = int(span.decodable_batch(K, ts.Y, sets, p).sum())
        else:
            ok = sum(1 for U in sets.tolist() if dec.run(U, stall_cap=decode.STALL_CAP)[2])
        out[e] = ok
        if ok == 0:
            break
    return out


def exact_distribution(ts: TaskSet, decoder: str = "oracle", budget: int = BUDGET) -> RecoveryDistribution:
    n = ts.n
    counts = decodable_counts(ts, decoder, budget)
    cdf = [Fraction(0)] * (n + 1)
    for e, ok in counts.items():
        cdf[n - e] = Fraction(ok, math.comb(n, e))
    return RecoveryDistribution(n, "exact", cdf, decoder, ts.label)


def guaranteed_threshold(ts: TaskSet, budget: int = BUDGET) -> int:
    """Smallest t such that every t-subset of tasks decodes (oracle)."""
    K = decode.full_kernel(ts)
    p = ts.field()
    e = 0
    while e < ts.n:
        total = math.comb(ts.n, e + 1)
        if total > budget:
            raise BudgetExceeded(f"C({ts.n},{e + 1}) exceeds the budget {budget}")
        sets = span.erasure_sets(ts.n, e + 1)
        if not bool(span.decodable_batch(K, ts.Y, sets, p).all()):
            break
        e += 1
    return ts.n - e


# ------------------------------------------------------------- Monte Carlo


def trial_order(n: int, seed: int, trial: int) -> np.ndarray:
    """Arrival order of one trial; depends only on (seed, trial)."""
    return np.random.default_rng([seed, trial]).permutation(n)


def recovery_count(ts: TaskSet, order, decoder: str = "peel", stall_cap: int = decode.STALL_CAP, use_beta: bool = True):
    """Shortest decodable prefix length of ``order`` (None if never)."""
    order = [int(g) for g in order]
    if decoder == "peel":
        return decode.peeler(ts, use_beta).arrival_count(order, stall_cap)
    if decoder != "oracle":
        raise InvalidInput(f"unknown decoder {decoder!r}")
    K = decode.full_kernel(ts)
    p = ts.field()

    def ok(k):
        return span.decodable_unknown(K, ts.Y, order[k:], p)

    if not ok(len(order)):
        return None
    lo, hi = 0, len(order)
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def monte_carlo(
    ts: TaskSet,
    samples: int = SAMPLES,
    seed: int = 0,
    decoder: str | None = None,
    threads: int = 1,
    stall_cap: int = decode.STALL_CAP,
) -> RecoveryDistribution:
    """Empirical recovery-count distribution from ``samples`` random orders."""
    decoder = decoder or ("oracle" if ts.n <= 64 else "peel")
    n = ts.n
    if decoder == "peel":
        decode.peeler(ts)  # build once before threads share it
    else:
        decode.full_kernel(ts)

    def one(t):
        return recovery_count(ts, trial_order(n, seed, t), decoder, stall_cap)

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            counts = list(ex.map(one, range(samples)))
    else:
        counts = [one(t) for t in range(samples)]
    hist = np.zeros(n + 2, dtype=np.int64)
    for c in counts:
        hist[n + 1 if c is None else c] += 1
    cum = np.cumsum(hist[: n + 1])
    cdf = (cum / samples).tolist()
    return RecoveryDistribution(n, "empirical", cdf, decoder, ts.label, samples, seed, counts)


# -------------------------------------------------------------- thresholds


@dataclass(frozen=True)
class ThresholdRow:
    dims: tuple
    naive: int
    rank: int
    workers: int | None
    pluto: int | None
    epc: int
    pdc: int
    epc2: int
    exponent: float | None


def threshold_row(dims, rank: int, workers: int | None = None, tolerated: int | None = None) -> ThresholdRow:
    l, m, n = dims
    naive = l * m * n
    pluto = workers - tolerated if workers is not None and tolerated is not None else None
    exponent = None
    if workers is not None and l == m == n and l > 1:
        exponent = math.log(workers) / math.log(l)
    return ThresholdRow(tuple(dims), naive, rank, workers, pluto, naive + m - 1, l * (2 * m - 1) * n, 2 * rank - 1, exponent)


def thresholds_table(rows) -> list[ThresholdRow]:
    """Rows of ``(dims, rank, workers, tolerated)``; the last two may be None."""
    out = []
    for row in rows:
        row = tuple(row) + (None,) * (4 - len(row))
        out.append(threshold_row(*row))
    return out


# (dims, rank, workers, erasures tolerated) of the prime codes in the summary table
PRIME_ROWS = [
    ((2, 2, 2), 7, 9, 1),
    ((2, 2, 2), 7, 11, 2),
    ((2, 2, 2), 7, 13, 3),
    ((2, 2, 2), 7, 15, 4),
    ((2, 2, 2), 7, 17, 5),
    ((2, 2, 3), 11, 13, 1),
    ((2, 3, 2), 11, 14, 1),
    ((3, 2, 3), 15, 17, 1),
    ((2, 3, 3), 15, 18, 1),
    ((3, 3, 3), 23, 26, 1),
    ((3, 3, 3), 23, 29, 2),
    ((3, 3, 3), 23, 32, 3),
    ((3, 3, 3), 23, 35, 4),
    ((3, 3, 4), 29, 32, 1),
    ((3, 4, 3), 29, 33, 1),
    ((4, 3, 4), 38, 41, 1),
    ((3, 4, 4), 38, 42, 1),
    ((4, 4, 4), 49, 53, 1),
    ((4, 4, 4), 49, 57, 2),
    ((4, 4, 4), 49, 61, 3),
    ((4, 4, 4), 49, 63, 2),
]


__all__ = [
    "RecoveryDistribution",
    "ThresholdRow",
    "BudgetExceeded",
    "PRIME_ROWS",
    "decodable_counts",
    "exact_distribution",
    "guaranteed_threshold",
    "trial_order",
    "recovery_count",
    "monte_carlo",
    "threshold_row",
    "thresholds_table",
]
