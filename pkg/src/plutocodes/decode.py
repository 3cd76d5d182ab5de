"""Decodability of task subsets: an exact span oracle and a peeling decoder.

The oracle asks whether every C entry lies in the span of the available
task tensors. The peeler works like a Sudoku solver on the composition
structure of a task set: every axis line of a tensor product and every
prime code is a *check* (a small matrix of linear relations over a few
task ids). A check pins an unknown when the relations restricted to its
unknowns contain a unit vector. Checksum groups over a whole slice
(``kind == "beta"``) additionally get a *slice cut*: the slice relation is
solved together with the axis lines whose unknowns lie inside the slice.
When nothing moves, an optional bounded solve uses every structural
relation at once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import span
from .fieldlin import left_kernel_mod, rank_mod, rref_mod
from .scheme import Prime, TaskSet, Tensor, Union

STALL_CAP = 64
SLICE_CAP = 8


# ------------------------------------------------------------------- oracle


def _project_kernel(T: np.ndarray, p: int, seed: int) -> np.ndarray | None:
    """Left kernel of an integer matrix via a random projection; None if unverified."""
    n, d = T.shape
    rng = np.random.default_rng(seed)
    width = min(d, n + 8)
    R = rng.integers(0, 1 << 15, size=(d, width)).astype(np.float64)
    bound = float(np.abs(T).max(initial=0)) * d * (1 << 15)
    if bound >= 2.0**53:
        return None
    TR = np.mod(T.astype(np.float64) @ R, p).astype(np.int64)
    K = left_kernel_mod(TR, p)
    if K.shape[0] == 0:
        return K
    # exact check in float64: |K| < p, |T| small
    if float(p) * float(np.abs(T).max(initial=0)) * n >= 2.0**53:
        return None
    prod = np.mod(K.astype(np.float64) @ T.astype(np.float64), p)
    return K if not prod.any() else None


def _structural_kernel(structure, n: int, idmap=None) -> list[np.ndarray]:
    idmap = np.arange(n) if idmap is None else idmap
    rows = []
    for chk_ids, H in _raw_checks(structure, idmap):
        if H.shape[0] == 0:
            continue
        R = np.zeros((H.shape[0], n), dtype=np.int64)
        R[:, chk_ids] = H
        rows.append(R)
    return rows


def full_kernel(ts: TaskSet) -> np.ndarray:
    """A basis-spanning set of all linear relations among the task tensors."""
    key = "full_kernel"
    if key in ts._cache:
        return ts._cache[key]
    p = ts.field()
    if not isinstance(ts.structure, Union):
        rows = _structural_kernel(ts.structure, ts.n)
        K = np.vstack(rows) % p if rows else np.zeros((0, ts.n), dtype=np.int64)
    else:
        T = ts.tensors()
        K = None
        if T.shape[0] * T.shape[1] <= 400_000:
            K = left_kernel_mod(T, p)
        else:
            for seed in range(4):
                K = _project_kernel(T, p, seed)
                if K is not None:
                    break
            if K is None:
                K = left_kernel_mod(T, p)
    ts._cache[key] = K
    return K


def oracle_unknown(ts: TaskSet, unknown) -> bool:
    return span.decodable_unknown(full_kernel(ts), ts.Y, unknown, ts.field())


def oracle_decodable(ts: TaskSet, available) -> bool:
    """True iff every C entry is a linear combination of the available tasks."""
    avail = set(int(x) for x in available)
    return oracle_unknown(ts, [g for g in range(ts.n) if g not in avail])


def span_decodable(ts: TaskSet, available) -> bool:
    """Direct route: rank of the available task tensors with and without the targets."""
    p = ts.field()
    T = ts.tensors()
    Z = np.mod(ts.Y @ T, p)
    S = sorted(int(x) for x in available)
    if not S:
        return not Z.any()
    TS = np.mod(T[S], p)
    return rank_mod(TS, p) == rank_mod(np.vstack([TS, Z]), p)


def prime_erasure_solve(ts: TaskSet, available) -> tuple[set, bool]:
    """Unknowns pinned by the full relation space, and whether C is decodable."""
    avail = set(int(x) for x in available)
    unknown = [g for g in range(ts.n) if g not in avail]
    if not unknown:
        return set(), True
    p = ts.field()
    K = full_kernel(ts)
    Ku = np.mod(K[:, unknown], p)
    pinned = set()
    if Ku.size:
        R, piv = rref_mod(Ku, p)
        for row, c in zip(R, piv):
            if np.count_nonzero(row) == 1:
                pinned.add(unknown[c])
    return pinned, span.decodable_unknown(K, ts.Y, unknown, p)


# ------------------------------------------------------------------- checks


def _raw_checks(structure, idmap):
    """Yield (global ids, relation matrix, kind) for every check of a structure."""
    for ids, H, _ in _checks_with_kind(structure, idmap):
        yield ids, H


def _checks_with_kind(structure, idmap):
    if isinstance(structure, Prime):
        yield np.asarray(idmap), structure.kernel, structure.kind
    elif isinstance(structure, Tensor):
        sizes = [f.n for f in structure.factors]
        grid = np.asarray(idmap).reshape(sizes)
        for k, f in enumerate(structure.factors):
            if f.kernel.shape[0] == 0:
                continue
            lines = np.moveaxis(grid, k, -1).reshape(-1, f.n)
            for line in lines:
                yield line, f.kernel, f.kind
    elif isinstance(structure, Union):
        for sub, m in structure.parts:
            yield from _checks_with_kind(sub, np.asarray(idmap)[m])
    else:
        raise TypeError(f"unknown structure {type(structure).__name__}")


def min_relation_support(H, p: int) -> int:
    """Fewest nonzeros of a nonzero vector in the row space of ``H``.

    Every minimal support is cut out by k-1 independent zero positions,
    where k is the rank, so those subsets are enumerated.
    """
    R, _ = rref_mod(H, p)
    k, n = R.shape
    if k == 0:
        return n + 1
    best = min(int(np.count_nonzero(row)) for row in R)
    if k == 1:
        return best
    Rt = R.T
    for Z in combinations(range(n), k - 1):
        A = Rt[list(Z)]
        if rank_mod(A, p) != k - 1:
            continue
        x = left_kernel_mod(A.T, p)
        if x.shape[0] != 1:
            continue
        v = np.mod(x[0] @ R, p)
        best = min(best, int(np.count_nonzero(v)))
    return best


@dataclass
class AvailabilityState:
    known: frozenset
    inferred: set
    complete: bool
    unknown: set
    log: list = field(default_factory=list)


class Peeler:
    """Reusable peeling decoder for one task set."""

    def __init__(self, ts: TaskSet, use_beta: bool = True):
        self.ts = ts
        self.p = ts.field()
        self.use_beta = use_beta
        self.codes: list[np.ndarray] = []
        self.memo: list[dict] = []
        code_index = {}
        self.check_ids: list[np.ndarray] = []
        self.check_code: list[int] = []
        self.check_beta: list[bool] = []
        seen = set()
        for ids, H, kind in _checks_with_kind(ts.structure, np.arange(ts.n)):
            if H.shape[0] == 0 or (kind == "beta" and not use_beta):
                continue
            ids = np.asarray(ids, dtype=np.int64)
            Hm = np.mod(H, self.p)
            key = (Hm.shape, Hm.tobytes())
            c = code_index.get(key)
            if c is None:
                c = code_index[key] = len(self.codes)
                self.codes.append(Hm)
                self.memo.append({})
            dup = (c, ids.tobytes())
            if dup in seen:
                continue
            seen.add(dup)
            self.check_ids.append(ids)
            self.check_code.append(c)
            self.check_beta.append(kind == "beta")
        self.min_support = [min_relation_support(H, self.p) for H in self.codes]
        self.member: list[list] = [[] for _ in range(ts.n)]
        for ci, ids in enumerate(self.check_ids):
            for pos, g in enumerate(ids.tolist()):
                self.member[g].append((ci, pos))
        self.core = ts.core.astype(bool)
        self.core_list = self.core.tolist()
        self.beta_checks = [c for c, b in enumerate(self.check_beta) if b]
        self.max_degree = max((len(m) for m in self.member), default=0)

    # local rule: positions whose unit vector lies in the restricted row space
    def pins(self, code: int, mask: int) -> int:
        memo = self.memo[code]
        out = memo.get(mask)
        if out is None:
            H = self.codes[code]
            if H.shape[1] - bin(mask).count("1") < self.min_support[code] - 1:
                return 0
            pos = [i for i in range(mask.bit_length()) if mask >> i & 1]
            H = H[:, pos]
            out = 0
            if H.any():
                R, piv = rref_mod(H, self.p)
                for row, c in zip(R, piv):
                    if np.count_nonzero(row) == 1:
                        out |= 1 << pos[c]
            memo[mask] = out
        return out

    def _solve_rows(self, checks, unknown_ids):
        """Relations of ``checks`` restricted to ``unknown_ids`` as a dense matrix."""
        col = {g: i for i, g in enumerate(unknown_ids)}
        blocks = []
        for c in checks:
            ids = self.check_ids[c].tolist()
            sel = [i for i, g in enumerate(ids) if g in col]
            if not sel:
                continue
            H = self.codes[self.check_code[c]][:, sel]
            R = np.zeros((H.shape[0], len(col)), dtype=np.int64)
            R[:, [col[ids[i]] for i in sel]] = H
            blocks.append(R)
        if not blocks:
            return np.zeros((0, len(col)), dtype=np.int64)
        return np.vstack(blocks)

    def _unit_pins(self, R, unknown_ids):
        if R.shape[0] == 0:
            return []
        Rr, piv = rref_mod(R, self.p)
        return [unknown_ids[c] for row, c in zip(Rr, piv) if np.count_nonzero(row) == 1]

    def slice_pins(self, c: int, unknown: set, masks) -> tuple[list, list]:
        """Slice cut on checksum check ``c``: returns (pinned ids, axis checks used)."""
        ids = self.check_ids[c].tolist()
        Uc = [g for g in ids if g in unknown]
        if len(Uc) < 2 or len(Uc) > SLICE_CAP:
            return [], []
        inside = set(Uc)
        used = set()
        for g in Uc:
            for c2, _ in self.member[g]:
                if c2 == c or self.check_beta[c2] or c2 in used:
                    continue
                ids2 = self.check_ids[c2].tolist()
                if all(h in inside for h in ids2 if h in unknown):
                    used.add(c2)
        if not used:
            return [], []
        R = self._solve_rows([c] + sorted(used), Uc)
        return self._unit_pins(R, Uc), sorted(used)

    def run(self, unknown, stall_cap: int = STALL_CAP, record: bool = False):
        """Peel from an unknown set; returns (remaining unknown, inferred order, complete, log)."""
        unknown = set(int(g) for g in unknown)
        masks = [0] * len(self.check_ids)
        core_left = 0
        for g in unknown:
            if self.core_list[g]:
                core_left += 1
            for c, pos in self.member[g]:
                masks[c] |= 1 << pos
        inferred = []
        log = []
        queue = deque(c for c in range(len(masks)) if masks[c])
        queued = [bool(m) for m in masks]

        def settle(gs, how, where):
            nonlocal core_left
            fresh = [g for g in gs if g in unknown]
            for g in fresh:
                unknown.discard(g)
                inferred.append(g)
                if self.core_list[g]:
                    core_left -= 1
                for c2, pos2 in self.member[g]:
                    masks[c2] &= ~(1 << pos2)
                    if masks[c2] and not queued[c2]:
                        queued[c2] = True
                        queue.append(c2)
            if record and fresh:
                log.append((how, where, fresh))
            return bool(fresh)

        complete = False
        while True:
            while queue and core_left:
                c = queue.popleft()
                queued[c] = False
                m = masks[c]
                if not m:
                    continue
                pm = self.pins(self.check_code[c], m)
                if pm:
                    ids = self.check_ids[c]
                    gs = [int(ids[i]) for i in range(pm.bit_length()) if pm >> i & 1]
                    settle(gs, "line" if not self.check_beta[c] else "checksum", c)
            if not core_left:
                complete = True
                break
            moved = False
            for c in self.beta_checks:
                if masks[c]:
                    gs, used = self.slice_pins(c, unknown, masks)
                    if gs:
                        moved = settle(gs, "slice", c) or moved
            if moved:
                continue
            if stall_cap <= 0 or core_left > stall_cap:
                break
            gs, done = self.bounded_solve(unknown, masks)
            if done:
                if record:
                    log.append(("solve", None, []))
                complete = True
                break
            if not (gs and settle(gs, "solve", None)):
                break
        return unknown, inferred, complete, log

    def arrival_count(self, order, stall_cap: int = STALL_CAP) -> int | None:
        """Number of arrivals (in ``order``) after which the peeler completes.

        Line repair and slice cuts run forward as tasks arrive. Completion is
        monotone in the known set, so the bounded solve is placed by binary
        search between the first prefix it may apply to and the local answer.
        """
        order = [int(g) for g in order]
        n = self.ts.n
        unknown = set(range(n))
        masks = [0] * len(self.check_ids)
        for c, ids in enumerate(self.check_ids):
            masks[c] = (1 << len(ids)) - 1
        core_left = int(self.core.sum())
        queue = deque()
        queued = [False] * len(masks)
        gate = None
        local = None

        def settle(g):
            nonlocal core_left
            unknown.discard(g)
            if self.core_list[g]:
                core_left -= 1
            for c2, pos2 in self.member[g]:
                masks[c2] &= ~(1 << pos2)
                if masks[c2] and not queued[c2]:
                    queued[c2] = True
                    queue.append(c2)

        for k, g in enumerate(order, 1):
            if g in unknown:
                settle(g)
            while True:
                while queue and core_left:
                    c = queue.popleft()
                    queued[c] = False
                    m = masks[c]
                    if not m:
                        continue
                    pm = self.pins(self.check_code[c], m)
                    if pm:
                        ids = self.check_ids[c]
                        for i in range(pm.bit_length()):
                            if pm >> i & 1 and int(ids[i]) in unknown:
                                settle(int(ids[i]))
                if not core_left:
                    break
                moved = False
                for c in self.beta_checks:
                    if masks[c] and bin(masks[c]).count("1") <= SLICE_CAP:
                        gs, _ = self.slice_pins(c, unknown, masks)
                        for x in gs:
                            if x in unknown:
                                settle(x)
                                moved = True
                if not moved:
                    break
            queue.clear()
            queued = [False] * len(masks)
            if gate is None and stall_cap > 0 and core_left <= stall_cap:
                gate = k
            if not core_left:
                local = k
                break
        if local is None:
            local = None if unknown else len(order)
        if gate is None:
            return local
        hi = local if local is not None else len(order) + 1
        lo = gate
        seen = set(order)
        missing = [g for g in range(n) if g not in seen]
        # smallest k in [gate, hi) whose prefix completes with the bounded solve
        while lo < hi:
            mid = (lo + hi) // 2
            if self.run(order[mid:] + missing, stall_cap=stall_cap)[2]:
                hi = mid
            else:
                lo = mid + 1
        if local is None and lo > len(order):
            return None
        return lo

    def bounded_solve(self, unknown, masks):
        checks = [c for c, m in enumerate(masks) if m]
        U = sorted(unknown)
        R = self._solve_rows(checks, U)
        pins = self._unit_pins(R, U)
        p = self.p
        Yu = np.mod(self.ts.Y[:, U], p)
        Yu = Yu[np.any(Yu != 0, axis=1)]
        if Yu.shape[0] == 0:
            return pins, True
        if R.shape[0] == 0:
            return pins, False
        r0 = rank_mod(R, p)
        return pins, rank_mod(np.vstack([R, Yu]), p) == r0

    def is_stopping(self, unknown) -> bool:
        """No local pin and no slice cut applies, and some core task is unknown."""
        unknown = set(unknown)
        if not any(self.core_list[g] for g in unknown):
            return False
        return not self.violations(unknown, first_only=True)

    def violations(self, unknown: set, first_only: bool = False):
        """Checks that would make progress on ``unknown`` as (check, branch ids) pairs."""
        masks = {}
        for g in unknown:
            for c, pos in self.member[g]:
                masks[c] = masks.get(c, 0) | (1 << pos)
        out = []
        for c, m in masks.items():
            if self.pins(self.check_code[c], m):
                out.append((c, [int(g) for g in self.check_ids[c] if g not in unknown]))
                if first_only:
                    return out
        for c in self.beta_checks:
            if c in masks:
                gs, used = self.slice_pins(c, unknown, None)
                if gs:
                    branch = set(int(g) for g in self.check_ids[c])
                    for c2 in used:
                        branch.update(int(g) for g in self.check_ids[c2])
                    out.append((c, sorted(branch - unknown)))
                    if first_only:
                        return out
        return out


def peeler(ts: TaskSet, use_beta: bool = True) -> Peeler:
    key = ("peeler", use_beta)
    if key not in ts._cache:
        ts._cache[key] = Peeler(ts, use_beta)
    return ts._cache[key]


def peel(ts: TaskSet, available, use_beta: bool = True, stall_cap: int = STALL_CAP) -> AvailabilityState:
    known = frozenset(int(x) for x in available)
    dec = peeler(ts, use_beta)
    unknown, inferred, complete, log = dec.run(
        (g for g in range(ts.n) if g not in known), stall_cap=stall_cap, record=True
    )
    return AvailabilityState(known, set(inferred), complete, unknown, log)


def peel_unknown(ts: TaskSet, unknown, use_beta: bool = True, stall_cap: int = STALL_CAP) -> bool:
    """Fast completion test from an unknown set."""
    return peeler(ts, use_beta).run(unknown, stall_cap=stall_cap)[2]


# ------------------------------------------------------------ erasure graph


@dataclass
class BipartiteErasureGraph:
    left: set
    right: set
    edges: set  # (left vertex, right vertex) pairs, deduplicated
    core_edges: set


def _vertex_map(prime: Prime, merge: bool):
    out = list(range(prime.n))
    if merge and len(prime.groups) >= 2:
        for grp in prime.groups:
            for g in grp:
                out[g] = grp[0]
    return out


def erasure_graph(ts: TaskSet, unknown, merge: bool = False) -> BipartiteErasureGraph:
    """Rows and columns of a two-factor product as vertices, unknown cells as edges."""
    if not (isinstance(ts.structure, Tensor) and len(ts.structure.factors) == 2):
        raise TypeError("erasure graphs need a two-factor tensor product")
    fa, fb = ts.structure.factors
    va, vb = _vertex_map(fa, merge), _vertex_map(fb, merge)
    edges, core_edges = set(), set()
    for g in unknown:
        s, t = divmod(int(g), fb.n)
        e = (va[s], vb[t])
        edges.add(e)
        if ts.core[g]:
            core_edges.add(e)
    return BipartiteErasureGraph({e[0] for e in edges}, {e[1] for e in edges}, edges, core_edges)


def k_core(graph: BipartiteErasureGraph, k: int, order=None) -> BipartiteErasureGraph:
    """Repeatedly delete vertices of degree below ``k`` with their edges."""
    edges = set(graph.edges)
    deg: dict = {}
    for s, t in edges:
        deg[("L", s)] = deg.get(("L", s), 0) + 1
        deg[("R", t)] = deg.get(("R", t), 0) + 1
    adj: dict = {v: set() for v in deg}
    for s, t in edges:
        adj[("L", s)].add(("R", t))
        adj[("R", t)].add(("L", s))
    verts = list(deg) if order is None else [v for v in order if v in deg]
    stack = [v for v in verts if deg[v] < k]
    removed = set()
    while stack:
        v = stack.pop()
        if v in removed:
            continue
        removed.add(v)
        for w in adj[v]:
            if w in removed:
                continue
            adj[w].discard(v)
            deg[w] -= 1
            if deg[w] < k:
                stack.append(w)
        adj[v] = set()
    keep = {(s, t) for s, t in edges if ("L", s) not in removed and ("R", t) not in removed}
    return BipartiteErasureGraph(
        {s for s, _ in keep}, {t for _, t in keep}, keep, graph.core_edges & keep
    )


def core_predicts_stall(ts: TaskSet, unknown, k: int, merge: bool = False) -> bool:
    """True when the k-core of the erasure graph keeps an edge on a core cell."""
    return bool(k_core(erasure_graph(ts, unknown, merge), k).core_edges)


# --------------------------------------------------------- checksum cuts


def _square_parity():
    from .pluto import pluto_222
    from .scheme import beta_checksum, lift, tensor
    from .pluto import BETA_GROUP

    nine = lift(pluto_222(1))
    M = beta_checksum(tensor(nine, nine), *BETA_GROUP).core_matrix
    par = pluto_222(1).groups[0].parity_vector
    return M, par


def verify_union_theorems() -> dict:
    """Sweep the 2x2 and 4x4 systems that let a square checksum cut a line pair or a 4-cycle."""
    from fractions import Fraction

    from .fieldlin import det_exact, rank_rational

    M, p = _square_parity()
    M = [[int(x) for x in row] for row in M]
    p = [int(x) for x in p]
    pairs = list(combinations(range(7), 2))
    two_bad = []
    for s in range(7):
        for t, u in pairs:
            if det_exact([[M[s][t], M[s][u]], [p[t], p[u]]]) == 0:
                two_bad.append((s, t, u))
    two_bad_cols = []
    for t in range(7):
        for s, v in pairs:
            if det_exact([[M[s][t], M[v][t]], [p[s], p[v]]]) == 0:
                two_bad_cols.append((t, s, v))
    four_bad, four_rank_bad, recip_bad = [], [], []
    for s, v in pairs:
        for t, u in pairs:
            beta = [M[s][t], M[s][u], M[v][u], M[v][t]]
            row_s = [p[t], p[u], 0, 0]
            row_v = [0, 0, p[u], p[t]]
            col_t = [p[s], 0, 0, p[v]]
            col_u = [0, p[s], p[v], 0]
            if det_exact([beta, row_s, col_u, col_t]) == 0:
                four_bad.append((s, v, t, u))
            if rank_rational([beta, row_s, row_v, col_t, col_u]) != 4:
                four_rank_bad.append((s, v, t, u))
            # the checksum row must not be orthogonal to the cycle's null vector
            x = (
                Fraction(M[s][t], p[s] * p[t])
                - Fraction(M[s][u], p[s] * p[u])
                + Fraction(M[v][u], p[v] * p[u])
                - Fraction(M[v][t], p[v] * p[t])
            )
            if x == 0:
                recip_bad.append((s, v, t, u))
    return {
        "pair_cases": 7 * len(pairs),
        "pair_singular": two_bad,
        "pair_cases_columns": 7 * len(pairs),
        "pair_singular_columns": two_bad_cols,
        "cycle_cases": len(pairs) ** 2,
        "cycle_singular": four_bad,
        "cycle_rank_deficient": four_rank_bad,
        "reciprocal_zero": recip_bad,
    }


# ---------------------------------------------------------- stopping sets


@dataclass
class StoppingSearch:
    size: int | None
    sets: list
    mode: str  # "exhaustive" or "sampled"
    starts: int
    nodes: int


def min_stopping_set(
    ts: TaskSet,
    size_bound: int,
    use_beta: bool = True,
    starts=None,
    max_sets: int = 1000,
    node_budget: int = 2_000_000,
) -> StoppingSearch:
    """Smallest unknown sets on which line repair and slice cuts make no progress.

    Branch and bound with iterative deepening. A set is grown from a start
    core task; whenever some check would still make progress, one of that
    check's other tasks is added. ``starts`` limits the start tasks (the
    search is then reported as sampled).
    """
    dec = peeler(ts, use_beta)
    core_ids = [int(g) for g in np.flatnonzero(ts.core)]
    mode = "exhaustive"
    if starts is None:
        start_list = core_ids
    else:
        start_list = [int(s) for s in starts]
        if sorted(start_list) != core_ids:
            mode = "sampled"
    rank_of = {g: i for i, g in enumerate(core_ids)}
    dmax = max(dec.max_degree, 1)
    nodes = 0

    def search(U, start, budget, found):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise _BudgetExceeded
        viol = dec.violations(U)
        if not viol:
            found.add(frozenset(U))
            return
        if budget == 0:
            return
        if -(-len(viol) // dmax) > budget:
            return
        c, branch = min(viol, key=lambda cb: len(cb[1]))
        for g in branch:
            if dec.core_list[g] and rank_of[g] < rank_of[start]:
                continue
            U.add(g)
            search(U, start, budget - 1, found)
            U.discard(g)
            if len(found) >= max_sets:
                return

    for size in range(1, size_bound + 1):
        found: set = set()
        try:
            for s in start_list:
                search({s}, s, size - 1, found)
                if len(found) >= max_sets:
                    break
        except _BudgetExceeded:
            return StoppingSearch(None, sorted(sorted(x) for x in found), "budget", len(start_list), nodes)
        found = {f for f in found if len(f) == size}
        if found:
            return StoppingSearch(size, sorted(sorted(x) for x in found), mode, len(start_list), nodes)
    return StoppingSearch(None, [], mode, len(start_list), nodes)


class _BudgetExceeded(Exception):
    pass


def is_four_cycle(cells, n2: int) -> bool:
    rows = {g // n2 for g in cells}
    cols = {g % n2 for g in cells}
    return len(cells) == 4 and len(rows) == 2 and len(cols) == 2


def exhaustive_peel_failures(ts: TaskSet, e: int, stall_cap: int = 0, use_beta: bool = True):
    """All unknown sets of size ``e`` on which the peeler does not complete."""
    dec = peeler(ts, use_beta)
    bad = []
    total = comb(ts.n, e)
    for U in combinations(range(ts.n), e):
        if not dec.run(U, stall_cap=stall_cap)[2]:
            bad.append(U)
    return bad, total


__all__ = [
    "AvailabilityState",
    "BipartiteErasureGraph",
    "Peeler",
    "StoppingSearch",
    "STALL_CAP",
    "core_predicts_stall",
    "erasure_graph",
    "exhaustive_peel_failures",
    "full_kernel",
    "is_four_cycle",
    "k_core",
    "min_stopping_set",
    "oracle_decodable",
    "oracle_unknown",
    "peel",
    "peel_unknown",
    "peeler",
    "prime_erasure_solve",
    "span_decodable",
    "verify_union_theorems",
]
