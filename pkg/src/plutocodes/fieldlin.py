"""Exact linear algebra over the rationals and over prime fields.

Two scalar kinds are used for decisions: exact rationals (``Fraction``) and
residues modulo a prime ``p``.  Doubles are accepted nowhere in this module;
floating point only appears in :mod:`plutocodes.execution`.

A *field* argument is either the string ``"rational"`` or a prime ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from itertools import combinations
from numbers import Integral

import numpy as np

P = 1_000_003
RATIONAL = "rational"


class InvalidInput(ValueError):
    """Raised for malformed matrices, mixed scalar kinds or bad shapes."""


def parse_field(text):
    """Parse ``"rational"`` or ``"fp:<p>"`` into a field argument."""
    if text in (None, RATIONAL):
        return RATIONAL
    if text == "generic":
        return P
    if isinstance(text, Integral):
        return int(text)
    if isinstance(text, str) and text.startswith("fp:"):
        p = int(text[3:])
        if not is_prime(p):
            raise InvalidInput(f"{p} is not prime")
        return p
    raise InvalidInput(f"unknown field {text!r}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> set[int]:
    n = abs(int(n))
    out = set()
    f = 2
    while f * f <= n:
        while n % f == 0:
            out.add(f)
            n //= f
        f += 1
    if n > 1:
        out.add(n)
    return out


def _kind(x):
    if isinstance(x, (bool, np.bool_)):
        return "int"
    if isinstance(x, (Integral, np.integer)):
        return "int"
    if isinstance(x, Fraction):
        return "frac"
    if isinstance(x, (float, np.floating)):
        return "float"
    return type(x).__name__


def _as_2d(M):
    arr = np.asarray(M, dtype=object if _has_fraction(M) else None)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise InvalidInput("expected a 2-D matrix")
    return arr


def _has_fraction(M):
    if isinstance(M, np.ndarray):
        return M.dtype == object
    try:
        return any(isinstance(x, Fraction) for row in M for x in (row if hasattr(row, "__iter__") else [row]))
    except TypeError:
        return False


def _check_kinds(arr):
    if arr.dtype.kind in "iub":
        return "int"
    if arr.dtype.kind == "f":
        raise InvalidInput("floating point entries are not allowed in exact rank decisions")
    kinds = {_kind(x) for x in arr.ravel()}
    if "float" in kinds and len(kinds) > 1:
        raise InvalidInput("mixed scalar kinds")
    bad = kinds - {"int", "frac"}
    if bad:
        raise InvalidInput(f"unsupported scalar kinds {sorted(bad)}")
    return "frac" if "frac" in kinds else "int"


def to_mod(M, p: int) -> np.ndarray:
    """Reduce an integer or rational matrix to canonical residues mod ``p``."""
    arr = _as_2d(M)
    kind = _check_kinds(arr)
    if kind == "int":
        return np.mod(arr.astype(np.int64), p)
    out = np.empty(arr.shape, dtype=np.int64)
    for idx, x in np.ndenumerate(arr):
        x = Fraction(x)
        if x.denominator % p == 0:
            raise InvalidInput(f"denominator divisible by {p}")
        out[idx] = x.numerator % p * pow(x.denominator, -1, p) % p
    return out


def to_fractions(M) -> list[list[Fraction]]:
    arr = _as_2d(M)
    _check_kinds(arr)
    return [[Fraction(x) for x in row] for row in arr.tolist()]


# ---------------------------------------------------------------- mod p kernels


def rref_mod(M, p: int = P):
    """Reduced row echelon form mod ``p``; returns (rows, pivot columns)."""
    A = np.mod(np.array(M, dtype=np.int64), p)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod(M, p: int = P) -> int:
    """Rank mod ``p`` by forward elimination (no back substitution)."""
    A = np.mod(np.array(M, dtype=np.int64), p)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    rows, cols = A.shape
    if cols > rows:
        A = A.T.copy()
        rows, cols = cols, rows
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        piv = A[r, c]
        below = A[r + 1:, c]
        hit = np.flatnonzero(below)
        if hit.size:
            hit += r + 1
            A[hit] = (A[hit] * piv - np.outer(A[hit, c], A[r])) % p
        r += 1
    return r


def rank_batch(mats, p: int = P) -> np.ndarray:
    """Ranks mod ``p`` of a stack of equally shaped matrices, shape (B, m, n)."""
    A = np.mod(np.array(mats, dtype=np.int64), p)
    B, m, n = A.shape
    rk = np.zeros(B, dtype=np.int64)
    row_ids = np.arange(m)
    for c in range(n):
        cand = (A[:, :, c] != 0) & (row_ids[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        piv = np.argmax(cand[b], axis=1)
        r0 = rk[b]
        top = A[b, r0].copy()
        A[b, r0] = A[b, piv]
        A[b, piv] = top
        prow = A[b, r0]
        pval = prow[:, c][:, None, None]
        sub = A[b]
        f = sub[:, :, c] * (row_ids[None, :] > r0[:, None])
        A[b] = (sub * pval - f[:, :, None] * prow[:, None, :]) % p
        rk[b] += 1
    return rk


def left_kernel_mod(M, p: int = P) -> np.ndarray:
    """Basis (as rows) of ``{z : z M = 0}`` over F_p."""
    M = np.mod(np.array(M, dtype=np.int64), p)
    n = M.shape[0]
    aug = np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref_mod(aug, p)
    k = sum(1 for c in piv if c < M.shape[1])
    ker = R[k:, M.shape[1]:]
    return ker.copy()


# ------------------------------------------------------------- rational kernels


def rref_rational(M):
    """Reduced row echelon form over Q; returns (rows of Fractions, pivots)."""
    A = to_fractions(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if i is None:
            continue
        A[r], A[i] = A[i], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for j in range(rows):
            if j != r and A[j][c] != 0:
                f = A[j][c]
                A[j] = [x - f * y for x, y in zip(A[j], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rank_integer_rows(rows: list[list[int]]) -> int:
    # fraction-free elimination on Python ints
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    cols = len(rows[0])
    r = 0
    for c in range(cols):
        i = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r]
        for j in range(r + 1, len(rows)):
            f = rows[j][c]
            if f:
                new = [x * piv[c] - f * y for x, y in zip(rows[j], piv)]
                g = 0
                for x in new:
                    g = gcd(g, x)
                if g > 1:
                    new = [x // g for x in new]
                rows[j] = new
        r += 1
        if r == len(rows):
            break
    return r


def rank_rational(M) -> int:
    A = to_fractions(M)
    if not A:
        return 0
    rows = []
    for row in A:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
    return _rank_integer_rows(rows)


def left_kernel_rational(M) -> list[list[Fraction]]:
    A = to_fractions(M)
    n = len(A)
    cols = len(A[0]) if n else 0
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref_rational(aug)
    k = sum(1 for c in piv if c < cols)
    return [row[cols:] for row in R[k:]]


def solve_left_rational(M, T):
    """Return W (Fractions) with ``W M = T`` row by row, or None if impossible."""
    A = to_fractions(M)
    Tf = to_fractions(T)
    n = len(A)
    cols = len(A[0])
    # transpose system: M^T w^T = t^T, solved for all targets at once
    At = [[A[i][c] for i in range(n)] + [Tf[t][c] for t in range(len(Tf))] for c in range(cols)]
    R, piv = rref_rational(At)
    if any(c >= n for c in piv):
        return None
    W = [[Fraction(0)] * n for _ in Tf]
    for row, c in zip(R, piv):
        for t in range(len(Tf)):
            W[t][c] = row[n + t]
    return W


# ------------------------------------------------------------------ public API


def rank(M, field=RATIONAL) -> int:
    """Rank of ``M`` over the rationals or over F_p."""
    arr = _as_2d(M)
    if arr.size == 0:
        raise InvalidInput("empty matrix")
    if field == RATIONAL:
        return rank_rational(arr)
    return rank_mod(to_mod(arr, field), field)


def in_span(targets, generators, field=RATIONAL) -> list[bool]:
    """For each target vector, whether it lies in the span of the generators."""
    T = [list(t) for t in targets]
    G = [list(g) for g in generators]
    dims = {len(v) for v in T + G}
    if len(dims) > 1:
        raise InvalidInput("dimension mismatch")
    if not G:
        return [not any(t) for t in T]
    base = rank(G, field)
    return [rank(G + [t], field) == base for t in T]


def zero_minors(M, k: int, columns=None, field=RATIONAL) -> list[tuple[int, ...]]:
    """k-subsets of ``columns`` (0-based) whose columns have rank below k.

    With exactly k rows this is the list of vanishing k-by-k minors.
    """
    arr = _as_2d(M)
    if columns is None:
        columns = range(arr.shape[1])
    columns = list(columns)
    if k > arr.shape[0]:
        raise InvalidInput("k exceeds the number of rows")
    if k > len(columns):
        raise InvalidInput("k exceeds the number of designated columns")
    subsets = list(combinations(columns, k))
    if not subsets:
        return []
    if field == RATIONAL:
        return [s for s in subsets if rank_rational(arr[:, list(s)]) < k]
    Am = to_mod(arr, field)
    idx = np.array(subsets)
    stack = np.transpose(Am[:, idx], (1, 0, 2))
    rk = rank_batch(stack, field)
    return [s for s, r in zip(subsets, rk) if r < k]


def minors(M, k: int):
    """All k-by-k minors (exact integers) over column subsets of a k-row matrix."""
    arr = np.asarray(M, dtype=object)
    out = {}
    for rows in combinations(range(arr.shape[0]), k):
        for cols in combinations(range(arr.shape[1]), k):
            out[(rows, cols)] = det_exact(arr[np.ix_(rows, cols)])
    return out


def det_exact(M) -> Fraction:
    A = to_fractions(M)
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        i = next((i for i in range(c, n) if A[i][c] != 0), None)
        if i is None:
            return Fraction(0)
        if i != c:
            A[c], A[i] = A[i], A[c]
            det = -det
        det *= A[c][c]
        for j in range(c + 1, n):
            f = A[j][c] / A[c][c]
            if f:
                A[j] = [x - f * y for x, y in zip(A[j], A[c])]
    return det


__all__ = [
    "P",
    "RATIONAL",
    "InvalidInput",
    "parse_field",
    "is_prime",
    "prime_factors",
    "to_mod",
    "to_fractions",
    "rref_mod",
    "rank_mod",
    "rank_batch",
    "left_kernel_mod",
    "rref_rational",
    "rank_rational",
    "left_kernel_rational",
    "solve_left_rational",
    "rank",
    "in_span",
    "zero_minors",
    "minors",
    "det_exact",
]
