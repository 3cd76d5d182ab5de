"""Bilinear matrix multiplication algorithms <l, m, n; r>.

Block flattening is row-major: A-block (i, j) sits at index ``i*m + j``,
B-block (j, k) at ``j*n + k`` and C-entry (i, k) at ``i*n + k`` (0-based).
Task ``s`` multiplies ``a_enc[s] . vec(A)`` by ``b_enc[s] . vec(B)`` and
``C = dec @ tasks``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .fieldlin import InvalidInput


def _frozen(x, dtype=np.int64):
    arr = np.array(x, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BilinearAlgorithm:
    name: str
    dims: tuple[int, int, int]
    a_enc: np.ndarray
    b_enc: np.ndarray
    dec: np.ndarray
    levels: tuple = ()
    modulus: int | None = None
    flagged: bool = False
    field_note: str = ""

    def __post_init__(self):
        l, m, n = self.dims
        r = self.a_enc.shape[0]
        if self.a_enc.shape != (r, l * m) or self.b_enc.shape != (r, m * n):
            raise InvalidInput("encoding shapes do not match dims")
        if self.dec.shape != (l * n, r):
            raise InvalidInput("decode shape does not match dims")
        if not self.levels:
            object.__setattr__(self, "levels", (tuple(self.dims),))

    @property
    def r(self) -> int:
        return self.a_enc.shape[0]

    def __eq__(self, other):
        if not isinstance(other, BilinearAlgorithm):
            return NotImplemented
        return (
            self.dims == other.dims
            and np.array_equal(self.a_enc, other.a_enc)
            and np.array_equal(self.b_enc, other.b_enc)
            and np.array_equal(self.dec, other.dec)
        )

    def __hash__(self):
        return hash((self.name, self.dims, self.r))

    def __repr__(self):
        l, m, n = self.dims
        return f"BilinearAlgorithm({self.name!r}, <{l},{m},{n};{self.r}>)"


def make_algorithm(name, dims, a_enc, b_enc, dec, levels=(), modulus=None, field_note=""):
    alg = BilinearAlgorithm(
        name=name,
        dims=tuple(int(d) for d in dims),
        a_enc=_frozen(a_enc),
        b_enc=_frozen(b_enc),
        dec=_frozen(dec),
        levels=tuple(tuple(x) for x in levels),
        modulus=modulus,
        field_note=field_note,
    )
    return alg


# ----------------------------------------------------------------- built-ins


def schoolbook(l: int, m: int = None, n: int = None) -> BilinearAlgorithm:
    if m is None:
        l, m, n = l
    r = l * m * n
    a = np.zeros((r, l * m), dtype=np.int64)
    b = np.zeros((r, m * n), dtype=np.int64)
    d = np.zeros((l * n, r), dtype=np.int64)
    s = 0
    for i in range(l):
        for j in range(m):
            for k in range(n):
                a[s, i * m + j] = 1
                b[s, j * n + k] = 1
                d[i * n + k, s] = 1
                s += 1
    return make_algorithm(f"schoolbook{l}{m}{n}", (l, m, n), a, b, d)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*([ABC])(\d)(\d)")


def linear_form(expr: str, rows: int, cols: int) -> np.ndarray:
    """Coefficients of an expression such as ``"A11 - 2A21"`` (1-based indices)."""
    out = np.zeros(rows * cols, dtype=np.int64)
    text = expr.replace(" ", "")
    pos = 0
    for mt in _TERM.finditer(text):
        if mt.start() != pos:
            raise InvalidInput(f"cannot parse {expr!r}")
        sign = -1 if mt.group(1) == "-" else 1
        coef = int(mt.group(2)) if mt.group(2) else 1
        i, j = int(mt.group(4)) - 1, int(mt.group(5)) - 1
        out[i * cols + j] += sign * coef
        pos = mt.end()
    if pos != len(text):
        raise InvalidInput(f"cannot parse {expr!r}")
    return out


def _from_forms(name, dims, tasks, c_formulas):
    l, m, n = dims
    a = np.array([linear_form(x, l, m) for x, _ in tasks])
    b = np.array([linear_form(y, m, n) for _, y in tasks])
    d = np.zeros((l * n, len(tasks)), dtype=np.int64)
    for entry, terms in c_formulas.items():
        i, k = int(entry[1]) - 1, int(entry[2]) - 1
        for t in terms:
            d[i * n + k, abs(t) - 1] += 1 if t > 0 else -1
    return make_algorithm(name, dims, a, b, d)


_STRASSEN_TASKS = [
    ("A11+A22", "B11+B22"),
    ("A21+A22", "B11"),
    ("A11", "B12-B22"),
    ("A22", "-B11+B21"),
    ("A11+A12", "B22"),
    ("-A11+A21", "B11+B12"),
    ("A12-A22", "B21+B22"),
]

_STRASSEN_C = {
    "C11": [1, 4, -5, 7],
    "C12": [3, 5],
    "C21": [2, 4],
    "C22": [1, -2, 3, 6],
}

_LADERMAN_TASKS = [
    ("A11+A12+A13-A21-A22-A32-A33", "B22"),
    ("A11-A21", "-B12+B22"),
    ("A22", "-B11+B12+B21-B22-B23-B31+B33"),
    ("-A11+A21+A22", "B11-B12+B22"),
    ("A21+A22", "-B11+B12"),
    ("A11", "B11"),
    ("-A11+A31+A32", "B11-B13+B23"),
    ("A11-A31", "-B13+B23"),
    ("A31+A32", "-B11+B13"),
    ("A11+A12+A13-A22-A23-A31-A32", "B23"),
    ("A32", "-B11+B13+B21-B22-B23-B31+B32"),
    ("-A13+A32+A33", "B22+B31-B32"),
    ("A13-A33", "B22-B32"),
    ("-A13", "-B31"),
    ("A32+A33", "-B31+B32"),
    ("-A13+A22+A23", "B23+B31-B33"),
    ("A13-A23", "B23-B33"),
    ("A22+A23", "-B31+B33"),
    ("A12", "B21"),
    ("A23", "B32"),
    ("-A21", "-B13"),
    ("-A31", "-B12"),
    ("A33", "B33"),
]

_LADERMAN_C = {
    "C11": [6, 14, 19],
    "C12": [14, 6, 4, 5, 1, 15, 12],
    "C21": [6, 14, 16, 17, 3, 2, 4],
    "C13": [14, 6, 7, 9, 10, 18, 16],
    "C31": [6, 14, 12, 13, 11, 8, 7],
    "C22": [6, 4, 5, 20, 2],
    "C23": [14, 16, 17, 21, 18],
    "C33": [6, 7, 9, 23, 8],
    "C32": [14, 12, 13, 22, 15],
}


def strassen() -> BilinearAlgorithm:
    return _from_forms("strassen", (2, 2, 2), _STRASSEN_TASKS, _STRASSEN_C)


def laderman() -> BilinearAlgorithm:
    return _from_forms("laderman", (3, 3, 3), _LADERMAN_TASKS, _LADERMAN_C)


BUILTINS = {
    "strassen": strassen,
    "laderman": laderman,
    "schoolbook222": lambda: schoolbook(2, 2, 2),
    "schoolbook333": lambda: schoolbook(3, 3, 3),
}


def by_name(name: str) -> BilinearAlgorithm:
    key = name.lower()
    if key in BUILTINS:
        return BUILTINS[key]()
    mt = re.fullmatch(r"schoolbook(\d)(\d)(\d)", key)
    if mt:
        return schoolbook(*(int(x) for x in mt.groups()))
    raise InvalidInput(f"unknown algorithm {name!r}")


# --------------------------------------------------------------- verification


def target_tensor(dims) -> np.ndarray:
    """The multiplication tensor as an array indexed [c, a, b]."""
    l, m, n = dims
    T = np.zeros((l * n, l * m, m * n), dtype=np.int64)
    for i in range(l):
        for j in range(m):
            for k in range(n):
                T[i * n + k, i * m + j, j * n + k] = 1
    return T


def brent_residual(alg: BilinearAlgorithm) -> np.ndarray:
    got = np.einsum("cs,sa,sb->cab", alg.dec, alg.a_enc, alg.b_enc)
    res = got - target_tensor(alg.dims)
    if alg.modulus:
        res %= alg.modulus
    return res


def verify_brent(alg: BilinearAlgorithm) -> list:
    """Empty list when the Brent equations hold exactly, else the residuals.

    Each residual is ``(i, j, j2, k, i2, k2, value)`` in 1-based block indices:
    the coefficient of ``A[i,j] B[j2,k]`` in the computed ``C[i2,k2]``.
    """
    l, m, n = alg.dims
    res = brent_residual(alg)
    out = []
    for c, a, b in zip(*np.nonzero(res)):
        i2, k2 = divmod(int(c), n)
        i, j = divmod(int(a), m)
        j2, k = divmod(int(b), n)
        out.append((i + 1, j + 1, j2 + 1, k + 1, i2 + 1, k2 + 1, int(res[c, a, b])))
    return out


def is_valid(alg: BilinearAlgorithm) -> bool:
    return not np.any(brent_residual(alg))


# ------------------------------------------------------------------ evaluation


def _combine(coefs, blocks, modulus):
    # sum of coefficient * block over the leading grid axes
    flat = blocks.reshape((coefs.shape[0],) + blocks.shape[2:])
    out = np.tensordot(coefs.astype(flat.dtype) if flat.dtype != object else coefs, flat, axes=(0, 0))
    if modulus:
        out = np.mod(out, modulus)
    return out


def _mul(x, y, modulus):
    out = x @ y if np.ndim(x) >= 2 else x * y
    if modulus:
        out = np.mod(out, modulus)
    return out


def evaluate(alg: BilinearAlgorithm, A, B, modulus=None, counter=None):
    """Multiply block grids ``A`` (l x m) and ``B`` (m x n) with ``alg``.

    Grids are arrays whose first two axes index blocks; trailing axes hold the
    blocks (matrices, or nothing for scalars).  Exactly ``r`` block products
    are formed, always as left factor times right factor.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    l, m, n = alg.dims
    if A.shape[:2] != (l, m) or B.shape[:2] != (m, n):
        raise InvalidInput(f"grid shapes {A.shape[:2]}, {B.shape[:2]} do not match {alg.dims}")
    modulus = modulus or alg.modulus
    prods = []
    for s in range(alg.r):
        left = _combine(alg.a_enc[s], A, modulus)
        right = _combine(alg.b_enc[s], B, modulus)
        prods.append(_mul(left, right, modulus))
        if counter is not None:
            counter[0] += 1
    prods = np.array(prods)
    C = np.tensordot(alg.dec.astype(prods.dtype) if prods.dtype != object else alg.dec, prods, axes=(1, 0))
    if modulus:
        C = np.mod(C, modulus)
    return C.reshape((l, n) + prods.shape[1:])


def block_product(A, B, modulus=None):
    """Reference block product by the schoolbook rule."""
    A = np.asarray(A)
    B = np.asarray(B)
    l, m = A.shape[:2]
    n = B.shape[1]
    rows = []
    for i in range(l):
        row = []
        for k in range(n):
            acc = sum(_mul(A[i, j], B[j, k], None) for j in range(m))
            row.append(np.mod(acc, modulus) if modulus else acc)
        rows.append(row)
    return np.array(rows)


def decode_combination(alg: BilinearAlgorithm, c_weights) -> np.ndarray:
    """Express a C-combination (weights over C-entries) in task values."""
    w = np.asarray(c_weights, dtype=np.int64)
    out = w @ alg.dec
    if alg.modulus:
        out %= alg.modulus
    return out


def c_weights(dims, entries: dict) -> np.ndarray:
    """Weight vector from ``{"C12": 1, "C11": -1}`` style entries."""
    l, m, n = dims
    w = np.zeros(l * n, dtype=np.int64)
    for key, val in entries.items():
        i, k = int(key[1]) - 1, int(key[2]) - 1
        w[i * n + k] += val
    return w


# -------------------------------------------------------------------- tensors


def kron_blocks(x, xshape, y, yshape) -> np.ndarray:
    """Kronecker product of block-coefficient rows with row-major layout.

    Rows of ``x`` live on a p x q grid and rows of ``y`` on p2 x q2; row
    ``s*len(y) + t`` of the result lives on the (p*p2) x (q*q2) grid with
    block (i*p2 + i2, j*q2 + j2).
    """
    p, q = xshape
    p2, q2 = yshape
    X = np.asarray(x).reshape(-1, p, q)
    Y = np.asarray(y).reshape(-1, p2, q2)
    out = np.einsum("sij,tkl->stikjl", X, Y)
    return out.reshape(X.shape[0] * Y.shape[0], p * p2 * q * q2)


def tensor_alg(p: BilinearAlgorithm, q: BilinearAlgorithm) -> BilinearAlgorithm:
    l, m, n = p.dims
    l2, m2, n2 = q.dims
    a = kron_blocks(p.a_enc, (l, m), q.a_enc, (l2, m2))
    b = kron_blocks(p.b_enc, (m, n), q.b_enc, (m2, n2))
    D = np.einsum("iks,jlt->ijklst", p.dec.reshape(l, n, p.r), q.dec.reshape(l2, n2, q.r))
    dec = D.reshape(l * l2 * n * n2, p.r * q.r)
    modulus = p.modulus or q.modulus
    return make_algorithm(
        f"{p.name}x{q.name}",
        (l * l2, m * m2, n * n2),
        a,
        b,
        dec,
        levels=p.levels + q.levels,
        modulus=modulus,
    )


# ------------------------------------------------------------- group actions


@dataclass(frozen=True)
class Substitution:
    """``X' = sign * left @ (src.T if transpose else src) @ right``."""

    source: str
    left: np.ndarray
    right: np.ndarray
    transpose: bool = False
    sign: int = 1

    def matrix(self) -> np.ndarray:
        """Linear map on row-major vectorizations: vec(X') = M vec(src)."""
        L = np.asarray(self.left, dtype=object)
        R = np.asarray(self.right, dtype=object)
        M = np.kron(L, R.T)
        if self.transpose:
            p, q = R.shape[0], L.shape[1]  # src is p x q
            T = np.zeros((p * q, p * q), dtype=object)
            for i in range(p):
                for j in range(q):
                    T[j * p + i, i * q + j] = 1
            M = M.dot(T)
        return self.sign * M

    def apply(self, src):
        S = np.asarray(src)
        if self.transpose:
            S = S.T
        return self.sign * (np.asarray(self.left) @ S @ np.asarray(self.right))


@dataclass(frozen=True)
class GroupAction:
    kind: str
    a_map: Substitution
    b_map: Substitution
    c_map: Substitution
    order: int = 0

    def apply(self, A, B):
        srcs = {"A": np.asarray(A), "B": np.asarray(B)}
        return self.a_map.apply(srcs[self.a_map.source]), self.b_map.apply(srcs[self.b_map.source])

    def transform_task(self, a, b):
        """Coefficient vectors (a', b') of a task evaluated at transformed inputs."""
        fa = self.a_map.matrix().T.dot(np.asarray(a, dtype=object))
        fb = self.b_map.matrix().T.dot(np.asarray(b, dtype=object))
        if self.a_map.source == "A" and self.b_map.source == "B":
            return fa, fb
        if self.a_map.source == "B" and self.b_map.source == "A":
            return fb, fa
        raise InvalidInput("action must map (A, B) to a permutation of its sources")

    def transform_weights(self, g, h):
        """New (g, h) with g' C h' equal to g C' h, where C' is the image of C."""
        cm = self.c_map
        L = np.asarray(cm.left, dtype=object)
        R = np.asarray(cm.right, dtype=object)
        g = np.asarray(g, dtype=object)
        h = np.asarray(h, dtype=object)
        if cm.transpose:
            return cm.sign * R.dot(h), g.dot(L)
        return cm.sign * g.dot(L), R.dot(h)


def identity_action(dims) -> GroupAction:
    l, m, n = dims
    I = np.eye
    return GroupAction(
        "identity",
        Substitution("A", I(l, dtype=np.int64), I(m, dtype=np.int64)),
        Substitution("B", I(m, dtype=np.int64), I(n, dtype=np.int64)),
        Substitution("C", I(l, dtype=np.int64), I(n, dtype=np.int64)),
        order=1,
    )


def conjugation(R, Rinv=None, order=0) -> GroupAction:
    """``X -> R X R^-1`` applied to A, B and C simultaneously."""
    R = np.array(R, dtype=np.int64)
    if Rinv is None:
        inv = np.array(_inverse_exact(R))
        if any(x.denominator != 1 for x in inv.ravel()):
            raise InvalidInput("conjugating matrix must be unimodular")
        Rinv = np.array([[int(x) for x in row] for row in inv], dtype=np.int64)
    return GroupAction(
        "conjugation",
        Substitution("A", R, Rinv),
        Substitution("B", R, Rinv),
        Substitution("C", R, Rinv),
        order=order,
    )


def _inverse_exact(R):
    n = R.shape[0]
    A = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(R)]
    for c in range(n):
        i = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[i] = A[i], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for j in range(n):
            if j != c and A[j][c] != 0:
                f = A[j][c]
                A[j] = [x - f * y for x, y in zip(A[j], A[c])]
    return [row[n:] for row in A]


def strassen_conjugation() -> GroupAction:
    return conjugation([[-1, 1], [-1, 0]], order=3)


_P3 = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=np.int64)
_Q3 = np.array([[0, 0, -1], [0, 1, 0], [-1, 0, 0]], dtype=np.int64)
_I3 = np.eye(3, dtype=np.int64)


def laderman_rotation() -> GroupAction:
    """A -> P B^T Q, B -> Q A^T, C -> P C^T."""
    return GroupAction(
        "rotation",
        Substitution("B", _P3, _Q3, transpose=True),
        Substitution("A", _Q3, _I3, transpose=True),
        Substitution("C", _P3, _I3, transpose=True),
        order=4,
    )


_D3 = np.diag([-1, 1, -1]).astype(np.int64)


def laderman_reflection() -> GroupAction:
    """A -> -B^T D, B -> -D A^T, C -> C^T with D = diag(-1, 1, -1).

    Without the diagonal sign change the plain transpose swap does not map
    the task set to itself.
    """
    return GroupAction(
        "reflection",
        Substitution("B", _I3, _D3, transpose=True, sign=-1),
        Substitution("A", _D3, _I3, transpose=True, sign=-1),
        Substitution("C", _I3, _I3, transpose=True),
        order=2,
    )


def plain_transpose_swap() -> GroupAction:
    """A -> -B^T, B -> -A^T, C -> C^T."""
    return GroupAction(
        "reflection",
        Substitution("B", _I3, _I3, transpose=True, sign=-1),
        Substitution("A", _I3, _I3, transpose=True, sign=-1),
        Substitution("C", _I3, _I3, transpose=True),
        order=2,
    )


@dataclass(frozen=True)
class SignedPermutation:
    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def cycles(self, one_based=True) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        off = 1 if one_based else 0
        for s in range(len(self.perm)):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            t = self.perm[s]
            while t != s:
                cyc.append(t)
                seen.add(t)
                t = self.perm[t]
            if len(cyc) > 1:
                out.append(tuple(x + off for x in cyc))
        return out

    def order(self) -> int:
        lens = [len(c) for c in self.cycles()] or [1]
        o = 1
        for x in lens:
            o = lcm(o, x)
        return o

    def __str__(self):
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


def _normalize(v):
    v = [Fraction(int(x)) for x in v]
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        return None, Fraction(0)
    return tuple(x / lead for x in v), lead


def verify_action(alg: BilinearAlgorithm, action: GroupAction, check_decode=True):
    """Signed task permutation induced by ``action``, or None on failure.

    ``perm[s] = t`` with sign ``e`` means task ``s`` evaluated at the
    transformed inputs equals ``e`` times task ``t``.
    """
    lookup = {}
    for t in range(alg.r):
        ka, la = _normalize(alg.a_enc[t])
        kb, lb = _normalize(alg.b_enc[t])
        lookup[(ka, kb)] = (t, la * lb)
    perm = []
    signs = []
    for s in range(alg.r):
        na, nb = action.transform_task(alg.a_enc[s], alg.b_enc[s])
        ka, la = _normalize(na)
        kb, lb = _normalize(nb)
        hit = lookup.get((ka, kb))
        if hit is None:
            return None
        t, scale = hit
        ratio = la * lb / scale
        if ratio not in (1, -1):
            return None
        perm.append(t)
        signs.append(int(ratio))
    if sorted(perm) != list(range(alg.r)):
        return None
    sp = SignedPermutation(tuple(perm), tuple(signs))
    if check_decode and not _decode_consistent(alg, action, sp):
        return None
    return sp


def _decode_consistent(alg, action, sp):
    # dec[:, s] * sign_s must equal (Phi_C dec)[:, perm[s]]
    Phi = action.c_map.matrix()
    lhs = Phi.dot(np.asarray(alg.dec, dtype=object))
    for s in range(alg.r):
        if any(lhs[:, sp.perm[s]] != sp.signs[s] * np.asarray(alg.dec[:, s], dtype=object)):
            return False
    return True


# ------------------------------------------------------------------------- io


def export_algorithm(alg: BilinearAlgorithm) -> str:
    doc = {
        "name": alg.name,
        "dims": list(alg.dims),
        "rank": alg.r,
        "a_enc": alg.a_enc.tolist(),
        "b_enc": alg.b_enc.tolist(),
        "dec": alg.dec.tolist(),
    }
    if alg.field_note:
        doc["field_note"] = alg.field_note
    return json.dumps(doc)


def _int_matrix(x, key):
    if not isinstance(x, list) or not all(isinstance(row, list) for row in x):
        raise InvalidInput(f"{key} must be an array of arrays")
    for row in x:
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidInput(f"{key} must contain integers only")
    return np.array(x, dtype=np.int64).reshape(len(x), -1) if x else np.zeros((0, 0), dtype=np.int64)


def import_algorithm(document) -> BilinearAlgorithm:
    """Parse an algorithm document; Brent failures set ``flagged``."""
    doc = json.loads(document) if isinstance(document, (str, bytes)) else dict(document)
    for key in ("name", "dims", "rank", "a_enc", "b_enc", "dec"):
        if key not in doc:
            raise InvalidInput(f"missing field {key!r}")
    dims = doc["dims"]
    if not (isinstance(dims, list) and len(dims) == 3 and all(isinstance(d, int) and d >= 1 for d in dims)):
        raise InvalidInput("dims must be three positive integers")
    r = doc["rank"]
    a = _int_matrix(doc["a_enc"], "a_enc")
    b = _int_matrix(doc["b_enc"], "b_enc")
    d = _int_matrix(doc["dec"], "dec")
    if a.shape[0] != r or b.shape[0] != r or (d.size and d.shape[1] != r):
        raise InvalidInput("rank does not match the encoding row counts")
    alg = make_algorithm(doc["name"], dims, a, b, d, field_note=doc.get("field_note", ""))
    if not is_valid(alg):
        object.__setattr__(alg, "flagged", True)
    return alg


__all__ = [
    "BilinearAlgorithm",
    "make_algorithm",
    "schoolbook",
    "strassen",
    "laderman",
    "by_name",
    "linear_form",
    "target_tensor",
    "verify_brent",
    "is_valid",
    "evaluate",
    "block_product",
    "decode_combination",
    "c_weights",
    "kron_blocks",
    "tensor_alg",
    "Substitution",
    "GroupAction",
    "identity_action",
    "conjugation",
    "strassen_conjugation",
    "laderman_rotation",
    "laderman_reflection",
    "plain_transpose_swap",
    "SignedPermutation",
    "verify_action",
    "export_algorithm",
    "import_algorithm",
]
