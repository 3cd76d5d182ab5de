"""Flat task sets: lifting prime codes, tensor products, unions, rotations.

Task ids of a tensor product are mixed-radix over the factors with the
first factor slowest, and block indices follow :func:`bilinear.kron_blocks`.
A union keeps each part's structure with an id map into the merged set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import span
from .bilinear import kron_blocks, schoolbook, strassen, tensor_alg
from .fieldlin import P, InvalidInput
from .pluto import (
    BETA_GROUP,
    PlutoCode,
    SearchFailed,
    charon_code,
    pluto_222,
    pluto_333,
    vector_checksum,
)


class UnsupportedComposition(ValueError):
    pass


class InvalidIdentification(ValueError):
    pass


# ------------------------------------------------------------------ structure


@dataclass(frozen=True, eq=False)
class Prime:
    name: str
    n: int
    kernel: np.ndarray  # integer relations over the prime's own tasks
    kind: str = "axis"  # "axis" or "beta"
    groups: tuple = ()  # local ids of each checksum group's backups
    core: tuple = ()  # local ids of base tasks


@dataclass(frozen=True, eq=False)
class Tensor:
    factors: tuple  # Prime factors, first is slowest


@dataclass(frozen=True, eq=False)
class Union:
    parts: tuple  # (structure, id map) pairs


@dataclass(eq=False)
class TaskSet:
    label: str
    dims: tuple
    levels: tuple
    a: np.ndarray
    b: np.ndarray
    core: np.ndarray
    Y: np.ndarray
    structure: object
    names: list
    modulus: int | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def core_ids(self) -> np.ndarray:
        return np.flatnonzero(self.core)

    def field(self) -> int:
        return self.modulus or P

    def tensors(self) -> np.ndarray:
        return span.task_tensors(self.a, self.b)

    def __repr__(self):
        L, M, N = self.dims
        return f"TaskSet({self.label!r}, <{L},{M},{N}>, n={self.n}, core={int(self.core.sum())})"


def _prime_of(code: PlutoCode, kind: str) -> Prime:
    groups = tuple(tuple(range(off, off + g.size)) for g, off in zip(code.groups, code.offsets()))
    return Prime(code.name, code.N, code.relations(), kind, groups, tuple(range(code.r)))


def lift(code: PlutoCode, kind: str = "axis", names=None, label=None) -> TaskSet:
    core = np.zeros(code.N, dtype=bool)
    core[: code.r] = True
    return TaskSet(
        label=label or code.name,
        dims=tuple(code.dims),
        levels=tuple(code.base.levels),
        a=code.a_enc,
        b=code.b_enc,
        core=core,
        Y=code.decode_matrix(),
        structure=_prime_of(code, kind),
        names=list(names or code.names()),
        modulus=code.modulus,
    )


def _factors(structure):
    if isinstance(structure, Prime):
        return (structure,)
    if isinstance(structure, Tensor):
        return structure.factors
    raise UnsupportedComposition("tensor of a union is not supported; apply unions after tensoring")


def _kron_decode(Yx, dx, Yy, dy):
    Lx, _, Nx = dx
    Ly, _, Ny = dy
    D = np.einsum("iks,jlt->ijklst", Yx.reshape(Lx, Nx, -1), Yy.reshape(Ly, Ny, -1))
    return D.reshape(Lx * Ly * Nx * Ny, -1)


def tensor(x: TaskSet, y: TaskSet) -> TaskSet:
    fx = _factors(x.structure)
    fy = _factors(y.structure)
    Lx, Mx, Nx = x.dims
    Ly, My, Ny = y.dims
    mod = x.modulus or y.modulus
    a = kron_blocks(x.a, (Lx, Mx), y.a, (Ly, My))
    b = kron_blocks(x.b, (Mx, Nx), y.b, (My, Ny))
    Y = _kron_decode(x.Y, x.dims, y.Y, y.dims)
    if mod:
        a, b, Y = a % mod, b % mod, Y % mod
    names = [f"{s}.{t}" for s in x.names for t in y.names]
    return TaskSet(
        label=f"{x.label}x{y.label}",
        dims=(Lx * Ly, Mx * My, Nx * Ny),
        levels=x.levels + y.levels,
        a=a,
        b=b,
        core=np.outer(x.core, y.core).reshape(-1),
        Y=Y,
        structure=Tensor(fx + fy),
        names=names,
        modulus=mod,
    )


def tensor_all(*parts: TaskSet) -> TaskSet:
    out = parts[0]
    for p in parts[1:]:
        out = tensor(out, p)
    return out


def _permute_levels(vecs, rows, cols, order):
    """Reorder level digits of block indices for an (R x C) grid per row of ``vecs``."""
    d = len(order)
    arr = vecs.reshape((vecs.shape[0],) + tuple(rows) + tuple(cols))
    axes = [0] + [1 + k for k in order] + [1 + d + k for k in order]
    return arr.transpose(axes).reshape(vecs.shape[0], -1)


def rotate_levels(ts: TaskSet, order) -> TaskSet:
    """Reorder the recursion levels; task ids and structure are unchanged."""
    order = list(order)
    if sorted(order) != list(range(len(ts.levels))):
        raise InvalidInput("order must be a permutation of the levels")
    ls = [lv[0] for lv in ts.levels]
    ms = [lv[1] for lv in ts.levels]
    ns = [lv[2] for lv in ts.levels]
    a = _permute_levels(ts.a, ls, ms, order)
    b = _permute_levels(ts.b, ms, ns, order)
    Y = _permute_levels(ts.Y.T, ls, ns, order).T
    return TaskSet(
        label=ts.label,
        dims=ts.dims,
        levels=tuple(ts.levels[k] for k in order),
        a=a,
        b=b,
        core=ts.core.copy(),
        Y=np.ascontiguousarray(Y),
        structure=ts.structure,
        names=[_permute_name(nm, order) for nm in ts.names],
        modulus=ts.modulus,
    )


def _permute_name(name: str, order) -> str:
    parts = name.split(".")
    if len(parts) == len(order):
        return ".".join(parts[k] for k in order)
    # slice-level backups span several levels; tag how often they were rotated
    m = re.fullmatch(r"rho(\d*)\((.*)\)", name)
    if m:
        return f"rho{int(m.group(1) or 1) + 1}({m.group(2)})"
    return f"rho({name})"


def rho(ts: TaskSet) -> TaskSet:
    """Cyclic axis rotation: level k of the result is level k+1 of ``ts``."""
    d = len(ts.levels)
    out = rotate_levels(ts, [(k + 1) % d for k in range(d)])
    out.label = f"rho({ts.label})"
    return out


def _flatten_union(structure, idmap):
    if isinstance(structure, Union):
        out = []
        for sub, sub_map in structure.parts:
            out.extend(_flatten_union(sub, idmap[sub_map]))
        return out
    return [(structure, idmap)]


def union(parts, identify=None, label=None) -> TaskSet:
    """Union of task sets on the same block grid.

    Without ``identify``, tasks with identical coefficient rows are merged.
    With ``identify`` (pairs ``((i, s), (j, t))`` of part index and local task
    id), exactly those pairs are merged and must have equal coefficients.
    """
    parts = list(parts)
    if not parts:
        raise InvalidInput("union of nothing")
    dims = parts[0].dims
    for p in parts:
        if p.dims != dims:
            raise InvalidInput("union parts must share dims")
    mod = next((p.modulus for p in parts if p.modulus), None)
    rows_a, rows_b, names, core = [], [], [], []
    maps = []
    if identify is None:
        index = {}
        for p in parts:
            m = np.empty(p.n, dtype=np.int64)
            for s in range(p.n):
                key = (p.a[s].tobytes(), p.b[s].tobytes())
                gid = index.get(key)
                if gid is None:
                    gid = len(rows_a)
                    index[key] = gid
                    rows_a.append(p.a[s])
                    rows_b.append(p.b[s])
                    names.append(p.names[s])
                    core.append(bool(p.core[s]))
                else:
                    core[gid] = core[gid] or bool(p.core[s])
                m[s] = gid
            maps.append(m)
    else:
        alias = {}
        for (i, s), (j, t) in identify:
            if not (np.array_equal(parts[i].a[s], parts[j].a[t]) and np.array_equal(parts[i].b[s], parts[j].b[t])):
                raise InvalidIdentification(f"task {s} of part {i} differs from task {t} of part {j}")
            alias[(j, t)] = (i, s)
        for i, p in enumerate(parts):
            m = np.empty(p.n, dtype=np.int64)
            for s in range(p.n):
                src = alias.get((i, s))
                while src is not None and src in alias:
                    src = alias[src]
                if src is not None:
                    gid = maps[src[0]][src[1]]
                    core[gid] = core[gid] or bool(p.core[s])
                else:
                    gid = len(rows_a)
                    rows_a.append(p.a[s])
                    rows_b.append(p.b[s])
                    names.append(p.names[s])
                    core.append(bool(p.core[s]))
                m[s] = gid
            maps.append(m)
    n = len(rows_a)
    first = parts[0]
    Y = np.zeros((first.Y.shape[0], n), dtype=np.int64)
    Y[:, maps[0]] = first.Y
    flat = []
    for p, m in zip(parts, maps):
        flat.extend(_flatten_union(p.structure, m))
    return TaskSet(
        label=label or "+".join(p.label for p in parts),
        dims=dims,
        levels=first.levels,
        a=np.array(rows_a, dtype=np.int64),
        b=np.array(rows_b, dtype=np.int64),
        core=np.array(core, dtype=bool),
        Y=Y,
        structure=Union(tuple(flat)),
        names=names,
        modulus=mod,
    )


def cyc(ts: TaskSet) -> TaskSet:
    r1 = rho(ts)
    r2 = rho(r1)
    return union([ts, r1, r2], label=f"cyc{ts.label}")


def task_products(ts: TaskSet, A, B, modulus=None) -> np.ndarray:
    """Values of every task on block grids A (L x M) and B (M x N)."""
    A = np.asarray(A)
    B = np.asarray(B)
    L, M, N = ts.dims
    if A.shape[:2] != (L, M) or B.shape[:2] != (M, N):
        raise InvalidInput(f"grid shapes do not match {ts.dims}")
    Af = A.reshape((L * M,) + A.shape[2:])
    Bf = B.reshape((M * N,) + B.shape[2:])
    a = ts.a.astype(Af.dtype) if Af.dtype != object else ts.a.astype(object)
    b = ts.b.astype(Bf.dtype) if Bf.dtype != object else ts.b.astype(object)
    left = np.tensordot(a, Af, axes=(1, 0))
    right = np.tensordot(b, Bf, axes=(1, 0))
    if modulus and left.dtype != object:
        # keep int64 factors below the modulus so their product cannot overflow
        left = np.mod(left, modulus)
        right = np.mod(right, modulus)
    out = left @ right if left.ndim == 3 else left * right
    return np.mod(out, modulus) if modulus else out


def evaluate(ts: TaskSet, A, B, modulus=None) -> np.ndarray:
    """C as an (L x N) grid decoded from the core tasks."""
    L, _, N = ts.dims
    prods = task_products(ts, A, B, modulus)
    Y = ts.Y.astype(prods.dtype) if prods.dtype != object else ts.Y.astype(object)
    C = np.tensordot(Y, prods, axes=(1, 0))
    if modulus:
        C = np.mod(C, modulus)
    return C.reshape((L, N) + prods.shape[1:])


# ---------------------------------------------------------------- beta codes


@dataclass(frozen=True, eq=False)
class BetaGroup:
    g: np.ndarray
    h: np.ndarray
    a: np.ndarray
    b: np.ndarray
    parity: np.ndarray  # over all tasks of the source task set
    core_matrix: np.ndarray | None  # parity over core tasks as a square grid


def beta_checksum(ts: TaskSet, g, h) -> BetaGroup:
    """Checksum over the whole block grid of ``ts``: g C h = (g A)(B h)."""
    L, M, N = ts.dims
    g = np.asarray(g, dtype=np.int64).reshape(-1)
    h = np.asarray(h, dtype=np.int64).reshape(-1)
    if not g.any() or not h.any():
        raise InvalidInput("g and h must be nonzero")
    if g.size != L or h.size != N:
        raise InvalidInput(f"g must have length {L} and h length {N}")
    a = np.zeros((M, L * M), dtype=np.int64)
    b = np.zeros((M, M * N), dtype=np.int64)
    for j in range(M):
        a[j, np.arange(L) * M + j] = g
        b[j, j * N + np.arange(N)] = h
    parity = np.outer(g, h).reshape(-1) @ ts.Y
    grid = None
    if isinstance(ts.structure, Tensor) and len(ts.structure.factors) == 2:
        sizes = [f.n for f in ts.structure.factors]
        full = parity.reshape(sizes)
        rows = np.flatnonzero(ts.core.reshape(sizes).any(axis=1))
        cols = np.flatnonzero(ts.core.reshape(sizes).any(axis=0))
        grid = full[np.ix_(rows, cols)]
    return BetaGroup(g, h, a, b, parity, grid)


def beta_code(groups, label=None) -> TaskSet:
    """Square of plain Strassen plus one 4-task checksum group per (g, h)."""
    alg = tensor_alg(strassen(), strassen())
    grps = [vector_checksum(alg, g, h) for g, h in groups]
    code = PlutoCode(alg, grps, name=label or str(49 + 4 * len(grps)))
    base_names = [f"S{s + 1}.S{t + 1}" for s in range(7) for t in range(7)]
    names = base_names + [f"B{50 + i}" for i in range(4 * len(grps))]
    return lift(code, kind="beta", names=names, label=code.name)


# second group found by search_beta_group([BETA_GROUP]); frozen to save the search time
BETA_SECOND = ((-5, -4, -2, 1), (-1, -4, 4, -3))
_BETA_KNOWN: list = [BETA_SECOND]


def beta_groups(count: int):
    """The fixed group followed by searched groups, deterministic."""
    groups = [BETA_GROUP]
    while len(groups) < count:
        k = len(groups)
        if len(_BETA_KNOWN) < k:
            _BETA_KNOWN.append(search_beta_group(groups))
        groups.append(_BETA_KNOWN[k - 1])
    return groups


def search_beta_group(groups, bound: int = 3, max_bound: int = 8):
    """Next 4x4 checksum group so the code tolerates one more erasure.

    Scans g, h with entries in [-b, b] lexicographically for b = bound,
    bound + 1, ... and returns the first hit. A new parity row must be
    nonzero on every base task and, against the first row, separate every
    pair of base tasks; survivors get the exhaustive check.
    """
    from itertools import product

    from .pluto import all_correctable

    alg = tensor_alg(strassen(), strassen())
    base = [vector_checksum(alg, g, h) for g, h in groups]
    target = len(groups) + 1
    D = alg.dec.reshape(4, 4, alg.r)
    first = base[0].parity_vector % P
    inv = np.array([pow(int(x), P - 2, P) for x in first], dtype=np.int64)
    for b in range(bound, max_bound + 1):
        vecs = np.array([v for v in product(range(-b, b + 1), repeat=4) if any(v)], dtype=np.int64)
        by_h = np.einsum("iks,hk->his", D, vecs)
        for g in vecs:
            rows = np.einsum("i,his->hs", g, by_h) % P
            ok = np.all(rows != 0, axis=1)
            ratios = np.sort(rows * inv % P, axis=1)
            ok &= np.all(np.diff(ratios, axis=1) != 0, axis=1)
            for k in np.flatnonzero(ok):
                h = vecs[k]
                code = PlutoCode(alg, base + [vector_checksum(alg, g, h)])
                if all_correctable(code.relations(), code.decode_matrix(), code.N, target):
                    return tuple(int(x) for x in g), tuple(int(x) for x in h)
    raise SearchFailed(f"no 4x4 checksum group with entries in [-{max_bound}, {max_bound}] tolerates {target} erasures")


# ------------------------------------------------------------------ builders


def _atom(token: str) -> TaskSet:
    if token in ("7", "9", "11", "13"):
        code = pluto_222((int(token) - 7) // 2)
        return lift(code)
    if token in ("23", "26", "29", "32", "35"):
        k = (int(token) - 23) // 3
        return lift(pluto_333(min(k, 2), max(0, k - 2)))
    if token in ("49", "53", "57", "61"):
        k = (int(token) - 49) // 4
        return beta_code(beta_groups(k), label=token) if k else lift(PlutoCode(tensor_alg(strassen(), strassen()), [], name="49"))
    if token in ("63", "charon"):
        return lift(charon_code(), label="charon")
    if token == "1":
        return lift(PlutoCode(schoolbook(1, 1, 1), [], name="1"))
    raise InvalidInput(f"unknown scheme atom {token!r}")


ALIASES = {
    "two53a57": "7x53+53x7+rho(57x7)",
    "a53two57": "7x53+57x7+rho(57x7)",
    "pillars": "9x9x9+cyc9x53",
}


def normalize_label(label: str) -> str:
    s = label.strip().replace("·", "x").replace("⋅", "x").replace("∪", "+").replace("*", "x")
    s = s.replace("ρ", "rho").replace("Cyc", "cyc").replace("∘", "")
    s = re.sub(r"\s+", "", s).lower()
    return ALIASES.get(s, s)


def _split_plus(s: str):
    depth, cur, out = 0, "", []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def _term(s: str) -> TaskSet:
    if s.startswith("cyc"):
        return cyc(_term(s[3:]))
    if s.startswith("rho(") and s.endswith(")"):
        return rho(_term(s[4:-1]))
    if s.startswith("(") and s.endswith(")"):
        return _build(s[1:-1])
    tokens = s.split("x")
    if not all(tokens):
        raise InvalidInput(f"cannot parse scheme term {s!r}")
    parts = [_atom(t) for t in tokens]
    out = tensor_all(*parts)
    out.label = s
    return out


def _build(s: str) -> TaskSet:
    terms = _split_plus(s)
    if len(terms) == 1:
        return _term(terms[0])
    return union([_term(t) for t in terms], label=s)


@lru_cache(maxsize=64)
def _cached(label: str) -> TaskSet:
    return _build(label)


def named_strategy(label: str) -> TaskSet:
    """Build a strategy from a label such as ``"9x9+53"`` or ``"Cyc 7·53"``."""
    key = normalize_label(label)
    if not key:
        raise InvalidInput("empty scheme label")
    return _cached(key)


CATALOG = [
    "9x9",
    "7x9+53",
    "9x9+53",
    "7x9+9x7+53",
    "9x11+11x9+57",
    "9x9x9",
    "cyc7x7x9",
    "cyc7x53",
    "cyc7x57",
    "9x9x9+cyc9x53",
    "7x9x7+7x53+53x7",
    "two53a57",
    "a53two57",
    "9x26",
    "26x26",
    "26x29",
    "26x53",
    "9x53",
]


__all__ = [
    "Prime",
    "Tensor",
    "Union",
    "TaskSet",
    "UnsupportedComposition",
    "InvalidIdentification",
    "lift",
    "tensor",
    "tensor_all",
    "task_products",
    "evaluate",
    "rotate_levels",
    "rho",
    "union",
    "cyc",
    "BetaGroup",
    "beta_checksum",
    "beta_code",
    "beta_groups",
    "search_beta_group",
    "BETA_SECOND",
    "named_strategy",
    "normalize_label",
    "CATALOG",
]
