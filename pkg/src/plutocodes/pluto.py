"""Checksum (backup) tasks built from the identity g C h = (g A)(B h).

A :class:`ChecksumGroup` stores its relations to the base tasks as a pair
``(parity, weights)`` with ``parity @ T_base == weights @ T_backups`` where
``T`` are task tensors.  Vector and EPC groups carry one relation; Charon
carries one relation per entry of ``G C H``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

import numpy as np

from . import span
from .bilinear import (
    BilinearAlgorithm,
    GroupAction,
    decode_combination,
    export_algorithm,
    schoolbook,
    strassen,
    laderman,
    tensor_alg,
    verify_action,
)
from .fieldlin import (
    P,
    InvalidInput,
    det_exact,
    is_prime,
    prime_factors,
    rank_mod,
    rank_rational,
    zero_minors,
)


class UnsupportedField(ValueError):
    pass


class SearchFailed(RuntimeError):
    pass


STRASSEN_GROUPS = [([1, 2], [-1, 1]), ([3, -1], [1, 2]), ([2, -3], [2, 1])]
LADERMAN_GROUPS = [([1, 2, 3], [2, -1, 3]), ([2, -1, 3], [1, 3, 2])]
BETA_GROUP = ([1, 1, 1, 1], [3, 1, 1, 2])
SEARCH_BOUND = 3


@dataclass(frozen=True, eq=False)
class ChecksumGroup:
    kind: str
    g: np.ndarray
    h: np.ndarray
    a: np.ndarray
    b: np.ndarray
    parity: np.ndarray
    weights: np.ndarray
    modulus: int | None = None
    inner: str = ""

    @property
    def size(self) -> int:
        return self.a.shape[0]

    @property
    def parity_vector(self) -> np.ndarray:
        return self.parity[0]

    def relations(self, r: int, offset: int, n_total: int) -> np.ndarray:
        """Relations as rows over all ``n_total`` tasks of a code."""
        out = np.zeros((self.parity.shape[0], n_total), dtype=np.int64)
        out[:, :r] = self.parity
        out[:, offset : offset + self.size] = -self.weights
        return out


def _nonzero(v, what):
    v = np.asarray(v, dtype=np.int64)
    if not np.any(v):
        raise InvalidInput(f"{what} must be nonzero")
    return v


def vector_checksum(alg: BilinearAlgorithm, g, h) -> ChecksumGroup:
    l, m, n = alg.dims
    g = _nonzero(g, "g").reshape(-1)
    h = _nonzero(h, "h").reshape(-1)
    if g.size != l or h.size != n:
        raise InvalidInput(f"g must have length {l} and h length {n}")
    a = np.zeros((m, l * m), dtype=np.int64)
    b = np.zeros((m, m * n), dtype=np.int64)
    for j in range(m):
        a[j, np.arange(l) * m + j] = g
        b[j, j * n + np.arange(n)] = h
    parity = decode_combination(alg, np.outer(g, h).reshape(-1))
    return ChecksumGroup(
        "vector", g, h, a, b, parity.reshape(1, -1), np.ones((1, m), dtype=np.int64), alg.modulus
    )


def group_identity_holds(alg: BilinearAlgorithm, grp: ChecksumGroup) -> bool:
    """parity @ T_base == weights @ T_backups exactly (or mod p)."""
    tb = span.task_tensors(alg.a_enc, alg.b_enc).astype(object)
    tk = span.task_tensors(grp.a, grp.b).astype(object)
    lhs = np.asarray(grp.parity, dtype=object).dot(tb)
    rhs = np.asarray(grp.weights, dtype=object).dot(tk)
    diff = lhs - rhs
    mod = grp.modulus or alg.modulus
    if mod:
        diff = diff % mod
    return not np.any(diff != 0)


class PlutoCode:
    """A bilinear algorithm plus ordered checksum groups."""

    def __init__(self, base: BilinearAlgorithm, groups=(), name: str = "", modulus=None):
        if base.flagged:
            raise InvalidInput(f"algorithm {base.name!r} fails the Brent check")
        self.base = base
        self.groups = list(groups)
        self.modulus = modulus or base.modulus or next((g.modulus for g in self.groups if g.modulus), None)
        self.name = name or f"{base.name}+{len(self.groups)}"
        for grp in self.groups:
            if grp.a.shape[1] != base.a_enc.shape[1] or grp.b.shape[1] != base.b_enc.shape[1]:
                raise InvalidInput("group does not match the base dims")

    @property
    def dims(self):
        return self.base.dims

    @property
    def r(self) -> int:
        return self.base.r

    @property
    def N(self) -> int:
        return self.r + sum(g.size for g in self.groups)

    def offsets(self) -> list[int]:
        out, pos = [], self.r
        for g in self.groups:
            out.append(pos)
            pos += g.size
        return out

    @property
    def a_enc(self) -> np.ndarray:
        return np.vstack([self.base.a_enc] + [g.a for g in self.groups])

    @property
    def b_enc(self) -> np.ndarray:
        return np.vstack([self.base.b_enc] + [g.b for g in self.groups])

    def relations(self) -> np.ndarray:
        rows = [g.relations(self.r, off, self.N) for g, off in zip(self.groups, self.offsets())]
        if not rows:
            return np.zeros((0, self.N), dtype=np.int64)
        return np.vstack(rows)

    def decode_matrix(self) -> np.ndarray:
        Y = np.zeros((self.base.dec.shape[0], self.N), dtype=np.int64)
        Y[:, : self.r] = self.base.dec
        return Y

    def field(self) -> int:
        return self.modulus or P

    def names(self) -> list[str]:
        letter = {"strassen": "S", "laderman": "L"}.get(self.base.name, "T")
        return [f"{letter}{i + 1}" for i in range(self.N)]

    def merged_check(self) -> np.ndarray | None:
        """Check matrix over base tasks plus one summed symbol per group."""
        if any(g.parity.shape[0] != 1 or np.any(g.weights != 1) for g in self.groups):
            return None
        k = len(self.groups)
        H = np.zeros((k, self.r + k), dtype=np.int64)
        for i, g in enumerate(self.groups):
            H[i, : self.r] = g.parity_vector
            H[i, self.r + i] = -1
        return H

    def kernel_is_complete(self) -> bool:
        """The stored relations span every linear relation among the tasks."""
        p = self.field()
        T = span.task_tensors(self.a_enc, self.b_enc)
        nrel = span.relation_rank(self.relations(), p)
        return nrel == self.N - rank_mod(T, p)

    def __repr__(self):
        l, m, n = self.dims
        return f"PlutoCode({self.name!r}, <{l},{m},{n};{self.N}>)"


def pluto_222(checks: int = 1) -> PlutoCode:
    if not 0 <= checks <= 3:
        raise InvalidInput("pluto_222 supports 0..3 checksum groups")
    alg = strassen()
    groups = [vector_checksum(alg, g, h) for g, h in STRASSEN_GROUPS[:checks]]
    return PlutoCode(alg, groups, name=str(7 + 2 * checks))


_LADERMAN_EXTRA_CACHE: dict[int, list] = {}


def pluto_333(checks: int = 1, extra: int = 0) -> PlutoCode:
    if not 0 <= checks <= 2:
        raise InvalidInput("pluto_333 supports 0..2 fixed checksum groups")
    if extra and checks != 2:
        raise InvalidInput("extra groups require both fixed groups")
    alg = laderman()
    groups = [vector_checksum(alg, g, h) for g, h in LADERMAN_GROUPS[:checks]]
    for k in range(extra):
        found = _LADERMAN_EXTRA_CACHE.get(k)
        if found is None:
            code = PlutoCode(alg, groups)
            found = search_vector_group(code, target=len(groups) + 1)
            _LADERMAN_EXTRA_CACHE[k] = found
        groups.append(vector_checksum(alg, *found))
    return PlutoCode(alg, groups, name=str(23 + 3 * (checks + extra)))


# ---------------------------------------------------------------- searching


def small_vectors(length: int, bound: int = SEARCH_BOUND):
    """Nonzero integer vectors with entries in [-bound, bound], lexicographic."""
    for v in product(range(-bound, bound + 1), repeat=length):
        if any(v):
            yield list(v)


def all_correctable(K, Y, n: int, e: int, p: int = P, chunk: int = 4096) -> bool:
    sets = span.erasure_sets(n, e)
    for lo in range(0, len(sets), chunk):
        if not span.decodable_batch(K, Y, sets[lo : lo + chunk], p).all():
            return False
    return True


def search_vector_group(code: PlutoCode, target: int, bound: int = SEARCH_BOUND):
    """First (g, h) in lexicographic order whose added group tolerates ``target`` erasures."""
    alg = code.base
    l, m, n = alg.dims
    p = code.field()
    Y = None
    for g in small_vectors(l, bound):
        for h in small_vectors(n, bound):
            grp = vector_checksum(alg, g, h)
            if not np.all(grp.parity_vector % p):
                continue
            trial = PlutoCode(alg, code.groups + [grp])
            if Y is None:
                Y = trial.decode_matrix()
            if all_correctable(trial.relations(), Y, trial.N, target, p):
                return g, h
    raise SearchFailed(f"no checksum group with entries in [-{bound}, {bound}] tolerates {target} erasures")


# ----------------------------------------------------------------------- EPC


def default_epc_prime(m: int, floor: int = 19_683) -> int:
    q = floor + 1
    while not (is_prime(q) and (q - 1) % m == 0):
        q += 1
    return q


def primitive_root_of_unity(m: int, p: int) -> int:
    if (p - 1) % m:
        raise UnsupportedField(f"F_{p} has no primitive {m}-th root of unity")
    if m == 1:
        return 1
    qs = prime_factors(m)
    for x in range(2, p):
        mu = pow(x, (p - 1) // m, p)
        if all(pow(mu, m // q, p) != 1 for q in qs):
            return mu
    raise UnsupportedField(f"no primitive {m}-th root of unity mod {p}")


def epc_checksum(alg: BilinearAlgorithm, zeta: int = 2, p: int | None = None) -> ChecksumGroup:
    """Checksum whose diagonal middle factor is split with m-th roots of unity."""
    l, m, n = alg.dims
    p = p or alg.modulus or default_epc_prime(m)
    if not is_prime(p):
        raise UnsupportedField(f"{p} is not prime")
    zeta %= p
    if zeta == 0:
        raise InvalidInput("zeta must be nonzero in the field")
    mu = primitive_root_of_unity(m, p)
    g = np.array([pow(zeta, i * m, p) for i in range(l)], dtype=np.int64)
    h = np.array([pow(zeta, k * l * m, p) for k in range(n)], dtype=np.int64)
    a = np.zeros((m, l * m), dtype=np.int64)
    b = np.zeros((m, m * n), dtype=np.int64)
    for k in range(m):
        root = zeta * pow(mu, k, p) % p
        inv = pow(root, p - 2, p)
        for j in range(m):
            a[k, np.arange(l) * m + j] = g * pow(root, j, p) % p
            b[k, j * n + np.arange(n)] = h * pow(inv, j, p) % p
    parity = m * decode_combination(alg, np.outer(g, h).reshape(-1) % p) % p
    grp = ChecksumGroup("epc", g, h, a, b, parity.reshape(1, -1), np.ones((1, m), dtype=np.int64), p)
    if not group_identity_holds(alg, grp):
        raise AssertionError("EPC checksum identity failed")
    return grp


def pluto_epc(alg: BilinearAlgorithm | None = None, zeta: int = 2, p: int | None = None) -> PlutoCode:
    alg = alg or strassen()
    grp = epc_checksum(alg, zeta, p)
    return PlutoCode(alg, [grp], name=f"epc{alg.r + grp.size}", modulus=grp.modulus)


def epc_is_mds(code: PlutoCode) -> bool:
    """Single-relation code is MDS iff its relation has no zero entry."""
    rel = code.relations() % code.field()
    return rel.shape[0] == 1 and bool(np.all(rel != 0))


# -------------------------------------------------------------------- Charon


def default_charon_inner() -> BilinearAlgorithm:
    return tensor_alg(schoolbook(1, 2, 1), strassen())


def charon_44(G, H, inner: BilinearAlgorithm | None = None, base: BilinearAlgorithm | None = None) -> ChecksumGroup:
    """Backups that run ``inner`` on the products (G A)(B H)."""
    base = base or tensor_alg(strassen(), strassen())
    inner = inner or default_charon_inner()
    G = np.asarray(G, dtype=np.int64)
    H = np.asarray(H, dtype=np.int64)
    L, M, N = base.dims
    if base.dims != (4, 4, 4):
        raise InvalidInput("charon_44 needs a <4,4,4> base")
    if inner.flagged or inner.dims != (2, M, 2):
        raise InvalidInput("inner algorithm must be a verified <2,4,2> scheme")
    if G.shape != (2, L) or H.shape != (N, 2):
        raise InvalidInput("G must be 2x4 and H 4x2")
    if rank_rational(G) < 2 or rank_rational(H) < 2:
        raise InvalidInput("G and H must have full rank")
    ri = inner.r
    # inner task u: left = sum_pq alpha[p,q] (GA)_pq, (GA)_pq = sum_i G[p,i] A[i,q]
    alpha = inner.a_enc.reshape(ri, 2, M)
    beta = inner.b_enc.reshape(ri, M, 2)
    a = np.einsum("upq,pi->uiq", alpha, G).reshape(ri, L * M)
    b = np.einsum("uqr,kr->uqk", beta, H).reshape(ri, M * N)
    weights = np.einsum("pi,kr->prik", G, H).reshape(4, L * N)
    parity = weights @ base.dec
    grp = ChecksumGroup("charon", G, H, a, b, parity, inner.dec.copy(), base.modulus, inner=inner.name)
    return grp


def charon_two_erasures_ok(G, H, inner=None, base=None) -> bool:
    """Exact test that every 2-erasure of the Charon code is correctable.

    Only base tasks enter the decode, so an erasure set matters through its
    base members. Column tests settle most pairs; rank-deficient pairs fall
    back to the span test.
    """
    try:
        grp = charon_44(G, H, inner, base)
    except InvalidInput:
        return False
    Pm = grp.parity % P
    W = grp.weights % P
    r = Pm.shape[1]
    if not np.all(Pm.any(axis=0)):
        return False
    from .fieldlin import rank_batch

    pairs = list(combinations(range(r), 2))
    stack = np.array([Pm[:, [s, t]] for s, t in pairs])
    weak = [pairs[i] for i in np.flatnonzero(rank_batch(stack, P) < 2)]
    wcols = [u for u in range(W.shape[1]) if np.any(W[:, u])]
    stack = np.array([np.stack([Pm[:, s], W[:, u]], axis=1) for s in range(r) for u in wcols])
    if np.any(rank_batch(stack, P) < 2):
        return False
    if weak:
        code = PlutoCode(base or tensor_alg(strassen(), strassen()), [grp])
        K, Y = code.relations(), code.decode_matrix()
        if not all(span.decodable_unknown(K, Y, pair) for pair in weak):
            return False
    return True


def _small_matrices(shape, bound):
    for v in product(range(-bound, bound + 1), repeat=shape[0] * shape[1]):
        M = np.array(v, dtype=np.int64).reshape(shape)
        if rank_rational(M) == min(shape):
            yield M


def _pair_minors_nonzero(X, Y):
    """For stacks of 4-vectors X[..., 4] and Y[..., 4]: are they independent?"""
    ok = np.zeros(np.broadcast_shapes(X.shape[:-1], Y.shape[:-1]), dtype=bool)
    for a, b in combinations(range(4), 2):
        ok |= X[..., a] * Y[..., b] != X[..., b] * Y[..., a]
    return ok


def _charon_screen(G, Hs, inner=None, base=None):
    """Column tests for a batch of H: returns (strict pass, pass up to dependent base pairs)."""
    base = base or tensor_alg(strassen(), strassen())
    inner = inner or default_charon_inner()
    D = base.dec.reshape(4, 4, base.r)
    Pm = np.einsum("pi,iks,hkr->hprs", np.asarray(G, dtype=np.int64), D, Hs).reshape(len(Hs), 4, base.r)
    W = inner.dec[:, np.any(inner.dec != 0, axis=0)]
    cols = Pm.transpose(0, 2, 1)  # (h, r, 4)
    nonzero = np.all(np.any(cols != 0, axis=2), axis=1)
    mixed = _pair_minors_nonzero(cols[:, :, None, :], W.T[None, None, :, :]).all(axis=(1, 2))
    i, j = np.triu_indices(base.r, 1)
    pairs = _pair_minors_nonzero(cols[:, i, :], cols[:, j, :]).all(axis=1)
    loose = nonzero & mixed
    return loose & pairs, loose


_CHARON_CACHE: dict = {}


def search_charon(bound: int = SEARCH_BOUND, inner=None, batch: int = 4096):
    """First (G, H) in lexicographic order whose code corrects every 2-erasure.

    A G is skipped when it already fails with a random large H: every rank
    condition holding for some H also holds for a generic one.
    """
    key = (bound, inner.name if inner else None)
    if key in _CHARON_CACHE:
        G, H = _CHARON_CACHE[key]
        return G.copy(), H.copy()
    base = tensor_alg(strassen(), strassen())
    rng = np.random.default_rng(0)
    generic = rng.integers(-(10**3), 10**3, size=(2, 4, 2))
    Hs_all = np.array(list(product(range(-bound, bound + 1), repeat=8)), dtype=np.int64).reshape(-1, 4, 2)
    full = np.zeros(len(Hs_all), dtype=bool)
    for a, b in combinations(range(4), 2):
        full |= Hs_all[:, a, 0] * Hs_all[:, b, 1] != Hs_all[:, a, 1] * Hs_all[:, b, 0]
    Hs_all = Hs_all[full]
    for G in _small_matrices((2, 4), bound):
        _, loose = _charon_screen(G, generic, inner, base)
        if not loose.any():
            continue
        for lo in range(0, len(Hs_all), batch):
            Hs = Hs_all[lo : lo + batch]
            strict, loose = _charon_screen(G, Hs, inner, base)
            for k in np.flatnonzero(loose):
                if strict[k] or charon_two_erasures_ok(G, Hs[k], inner, base):
                    _CHARON_CACHE[key] = (G, Hs[k].copy())
                    return G.copy(), Hs[k].copy()
    raise SearchFailed(f"no Charon matrices with entries in [-{bound}, {bound}]")


CHARON_SEED = 0
CHARON_RANGE = 10_000


def draw_charon(seed: int = CHARON_SEED, spread: int = CHARON_RANGE, inner=None, tries: int = 64):
    """First seeded draw of large random (G, H) whose code corrects every 2-erasure.

    Draw ``k`` uses ``default_rng([seed, k])`` with entries in [-spread, spread].
    """
    base = tensor_alg(strassen(), strassen())
    for k in range(tries):
        rng = np.random.default_rng([seed, k])
        G = rng.integers(-spread, spread + 1, size=(2, 4))
        H = rng.integers(-spread, spread + 1, size=(4, 2))
        if charon_two_erasures_ok(G, H, inner, base):
            return G, H
    raise SearchFailed(f"no admissible Charon draw in {tries} tries")


def charon_code(G=None, H=None, inner=None, policy: str = "seeded") -> PlutoCode:
    """The 63-task Charon code; without G, H they come from ``policy``.

    ``"seeded"`` uses :func:`draw_charon`, ``"lexicographic"`` uses
    :func:`search_charon` (small entries, much slower).
    """
    base = tensor_alg(strassen(), strassen())
    if G is None or H is None:
        if policy == "seeded":
            G, H = draw_charon(inner=inner)
        elif policy == "lexicographic":
            G, H = search_charon(inner=inner)
        else:
            raise InvalidInput(f"unknown policy {policy!r}")
    grp = charon_44(G, H, inner, base)
    return PlutoCode(base, [grp], name="charon")


def code_document(code: PlutoCode) -> str:
    """The algorithm document of the base plus a ``groups`` array."""
    doc = json.loads(export_algorithm(code.base))
    doc["name"] = code.name
    groups = []
    for grp in code.groups:
        entry = {"kind": grp.kind, "tasks": grp.size}
        if grp.kind == "charon":
            entry["G"] = np.asarray(grp.g).tolist()
            entry["H"] = np.asarray(grp.h).tolist()
            entry["inner"] = grp.inner
        else:
            entry["g"] = np.asarray(grp.g).tolist()
            entry["h"] = np.asarray(grp.h).tolist()
        if grp.modulus:
            entry["modulus"] = grp.modulus
        groups.append(entry)
    doc["groups"] = groups
    doc["N"] = code.N
    return json.dumps(doc)


def code_by_name(name: str) -> PlutoCode:
    """``"9"``..``"13"``, ``"23"``..``"35"``, ``"charon"``, ``"epc"`` or ``"epc-laderman"``."""
    key = str(name).strip().lower()
    if key in ("7", "9", "11", "13"):
        return pluto_222((int(key) - 7) // 2)
    if key in ("23", "26", "29", "32", "35"):
        k = (int(key) - 23) // 3
        return pluto_333(min(k, 2), max(0, k - 2))
    if key in ("63", "charon"):
        return charon_code()
    if key in ("epc", "epc-strassen"):
        return pluto_epc(strassen())
    if key == "epc-laderman":
        return pluto_epc(laderman())
    raise InvalidInput(f"unknown code {name!r}")


# ------------------------------------------------------------------- claims


def merged_minor_primes(H) -> set[int]:
    k = H.shape[0]
    primes = set()
    for cols in combinations(range(H.shape[1]), k):
        d = det_exact(H[:, cols])
        if d != 0:
            primes |= prime_factors(int(d))
    return primes


def _mds(H) -> bool:
    return not zero_minors(H, H.shape[0])


def verify_claims(code: PlutoCode, max_erasures: int | None = None, budget: int = 5_000_000) -> dict:
    p = code.field()
    K = code.relations()
    Y = code.decode_matrix()
    report = {"name": code.name, "N": code.N, "r": code.r}
    if max_erasures is None:
        counts = {}
        for e in range(code.N - code.r + 2):
            if comb(code.N, e) > budget:
                break
            ok = int(span.decodable_batch(K, Y, span.erasure_sets(code.N, e), p).sum())
            counts[e] = (ok, comb(code.N, e))
            if ok < comb(code.N, e):
                break
    else:
        counts = span.correctable_counts(K, Y, code.N, max_erasures, p, budget)
    report["counts"] = counts
    tolerated = [e for e, (ok, tot) in counts.items() if ok == tot]
    report["tolerates"] = max(tolerated) if tolerated else -1
    Hm = code.merged_check()
    report["merged_check"] = Hm
    if Hm is not None and Hm.shape[0]:
        k = Hm.shape[0]
        zm = zero_minors(Hm, k)
        report["merged_mds"] = not zm
        report["merged_zero_minors"] = zm
        report["minor_primes"] = merged_minor_primes(Hm)
        report["base_zero_minors"] = zero_minors(Hm, k, columns=range(code.r)) if k <= code.r else []
        if code.dims == (2, 2, 2) and k == 3:
            report["nullity_one_triples"] = report["base_zero_minors"]
            report["nonuples_mds"] = _mds(Hm[:, 1:])
    report["kernel_complete"] = code.kernel_is_complete()
    return report


# ----------------------------------------------------------------- symmetry


def _same_line(x, y) -> bool:
    """x and y are nonzero multiples of each other."""
    x = np.asarray(x, dtype=object).ravel()
    y = np.asarray(y, dtype=object).ravel()
    i = next(i for i, v in enumerate(x) if v != 0)
    if y[i] == 0:
        return False
    return all(x[j] * y[i] == y[j] * x[i] for j in range(len(x)))


def symmetry_orbit(alg: BilinearAlgorithm, action: GroupAction, g, h, bound: int = 12) -> list[ChecksumGroup]:
    """Orbit of the vector checksum (g, h) under repeated application of ``action``."""
    if verify_action(alg, action) is None:
        raise InvalidInput("action does not preserve the algorithm")
    start = np.outer(np.asarray(g, dtype=object), np.asarray(h, dtype=object))
    out = [vector_checksum(alg, g, h)]
    cg, ch = np.asarray(g, dtype=object), np.asarray(h, dtype=object)
    for _ in range(bound):
        cg, ch = action.transform_weights(cg, ch)
        if _same_line(np.outer(cg, ch), start):
            return out
        grp = vector_checksum(alg, [int(x) for x in cg], [int(x) for x in ch])
        if not group_identity_holds(alg, grp):
            raise AssertionError("derived group fails its identity")
        out.append(grp)
    raise InvalidInput(f"orbit did not close within {bound} steps")


__all__ = [
    "code_document",
    "code_by_name",
    "ChecksumGroup",
    "PlutoCode",
    "UnsupportedField",
    "SearchFailed",
    "STRASSEN_GROUPS",
    "LADERMAN_GROUPS",
    "BETA_GROUP",
    "vector_checksum",
    "group_identity_holds",
    "pluto_222",
    "pluto_333",
    "search_vector_group",
    "epc_checksum",
    "pluto_epc",
    "epc_is_mds",
    "default_epc_prime",
    "charon_44",
    "charon_two_erasures_ok",
    "charon_code",
    "draw_charon",
    "CHARON_SEED",
    "verify_claims",
    "symmetry_orbit",
]
