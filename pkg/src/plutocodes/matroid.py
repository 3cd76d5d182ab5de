"""Corank-nullity polynomials of decode matrices.

For a matrix with column set E the polynomial is
``sum over S of x**(rank E - rank S) * y**(|S| - rank S)``. Subsets are
enumerated depth first with an incremental echelon basis, so each step
costs one vector reduction. Ranks are taken mod a prime; the default prime
is large enough to act as characteristic zero for small-entry matrices.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numba
import numpy as np

from .bilinear import BilinearAlgorithm
from .fieldlin import P, InvalidInput, rank_mod

MAX_COLUMNS = 30


@dataclass(frozen=True)
class GroundMatrix:
    matrix: np.ndarray
    characteristic: int | None = None  # None means generic

    @property
    def modulus(self) -> int:
        return self.characteristic or P


def decode_matroid_matrix(alg: BilinearAlgorithm, augment: bool = False, negate=None) -> GroundMatrix:
    """Decode matrix (C entries by tasks), optionally turned into a zero-sum incidence form.

    With ``augment`` the rows in ``negate`` (default: the bottom two for a
    four-row matrix) are negated and a row is appended so every column sums
    to zero. Neither step changes the column matroid.
    """
    D = np.array(alg.dec, dtype=np.int64)
    if augment:
        if negate is None:
            negate = [D.shape[0] - 2, D.shape[0] - 1] if D.shape[0] == 4 else []
        D = D.copy()
        D[list(negate)] *= -1
        D = np.vstack([D, -D.sum(axis=0)])
    return GroundMatrix(D)


def with_characteristic(gm: GroundMatrix, characteristic: int | None) -> GroundMatrix:
    return GroundMatrix(gm.matrix, characteristic)


# ------------------------------------------------------------- enumeration


@numba.njit(cache=True)
def _inv(a, p):
    r = 1
    e = p - 2
    b = a % p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@numba.njit(cache=True)
def _dfs(cols, p, depth, size, rank, basis, pivots, full_rank, counts):
    n = cols.shape[0]
    if depth == n:
        counts[full_rank - rank, size - rank] += 1
        return
    # exclude column ``depth``
    _dfs(cols, p, depth + 1, size, rank, basis, pivots, full_rank, counts)
    # include it: reduce against the current basis
    m = cols.shape[1]
    v = basis[rank]
    for k in range(m):
        v[k] = cols[depth, k]
    for i in range(rank):
        c = v[pivots[i]]
        if c != 0:
            for k in range(m):
                v[k] = (v[k] - c * basis[i, k]) % p
    piv = -1
    for k in range(m):
        if v[k] != 0:
            piv = k
            break
    if piv < 0:
        _dfs(cols, p, depth + 1, size + 1, rank, basis, pivots, full_rank, counts)
    else:
        s = _inv(v[piv], p)
        for k in range(m):
            v[k] = v[k] * s % p
        pivots[rank] = piv
        _dfs(cols, p, depth + 1, size + 1, rank + 1, basis, pivots, full_rank, counts)


def _count_from(cols, p, prefix, full_rank):
    """Counts for all subsets whose choice on the first ``len(prefix)`` columns is fixed."""
    n, m = cols.shape
    basis = np.zeros((m + 1, m), dtype=np.int64)
    pivots = np.zeros(m + 1, dtype=np.int64)
    rank = 0
    size = 0
    for j, take in enumerate(prefix):
        if not take:
            continue
        size += 1
        v = cols[j].copy()
        for i in range(rank):
            c = v[pivots[i]]
            if c:
                v = (v - c * basis[i]) % p
        nz = np.flatnonzero(v)
        if nz.size:
            v = v * pow(int(v[nz[0]]), p - 2, p) % p
            basis[rank] = v
            pivots[rank] = nz[0]
            rank += 1
    counts = np.zeros((full_rank + 1, n + 1), dtype=np.int64)
    _dfs(cols, p, len(prefix), size, rank, basis, pivots, full_rank, counts)
    return counts


@dataclass(frozen=True)
class CorankNullityPoly:
    coeffs: dict  # (corank exponent, nullity exponent) -> count

    def __getitem__(self, key):
        return self.coeffs.get(key, 0)

    def __eq__(self, other):
        return isinstance(other, CorankNullityPoly) and self.coeffs == other.coeffs

    def __sub__(self, other):
        keys = set(self.coeffs) | set(other.coeffs)
        return CorankNullityPoly({k: v for k in keys if (v := self[k] - other[k]) != 0})

    def evaluate(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.coeffs.items())

    def triples(self):
        return sorted((i, j, c) for (i, j), c in self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda t: (t[0][1], -t[0][0])):
            mono = ("x" if i == 1 else f"x^{i}" if i else "") + ("y" if j == 1 else f"y^{j}" if j else "")
            mag = abs(c)
            body = mono if mono and mag == 1 else f"{mag}{mono}"
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def corank_nullity(gm: GroundMatrix, workers: int = 1, split: int = 4) -> CorankNullityPoly:
    """Sum of x^corank y^nullity over all column subsets."""
    M = np.mod(np.array(gm.matrix, dtype=np.int64), gm.modulus)
    n = M.shape[1]
    if n > MAX_COLUMNS:
        raise InvalidInput(f"{n} columns exceed the enumeration bound {MAX_COLUMNS}")
    p = gm.modulus
    full = rank_mod(M, p) if M.size else 0
    cols = np.ascontiguousarray(M.T)
    split = min(split, n)
    prefixes = list(product((0, 1), repeat=split))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda pre: _count_from(cols, p, pre, full), prefixes))
    else:
        parts = [_count_from(cols, p, pre, full) for pre in prefixes]
    total = np.sum(parts, axis=0)
    return CorankNullityPoly({(int(i), int(j)): int(total[i, j]) for i, j in zip(*np.nonzero(total))})


def corank_nullity_naive(gm: GroundMatrix) -> CorankNullityPoly:
    """Reference enumeration with one full elimination per subset."""
    M = np.array(gm.matrix, dtype=np.int64)
    n = M.shape[1]
    p = gm.modulus
    full = rank_mod(M, p)
    out: dict = {}
    for mask in range(1 << n):
        S = [j for j in range(n) if mask >> j & 1]
        r = rank_mod(M[:, S], p) if S else 0
        key = (full - r, len(S) - r)
        out[key] = out.get(key, 0) + 1
    return CorankNullityPoly(out)


def char_correction(gm: GroundMatrix, char_a: int | None, char_b: int | None) -> CorankNullityPoly:
    """T over characteristic ``char_b`` minus T over ``char_a`` (None is generic)."""
    if char_a == char_b:
        return CorankNullityPoly({})
    ta = corank_nullity(with_characteristic(gm, char_a))
    tb = corank_nullity(with_characteristic(gm, char_b))
    return tb - ta


def divide_by_xy_minus_one(poly: CorankNullityPoly) -> CorankNullityPoly | None:
    """Exact quotient by (xy - 1), or None when it does not divide."""
    rem = dict(poly.coeffs)
    quot: dict = {}
    while rem:
        # leading term in the order that makes xy*q the top part
        i, j = max(rem, key=lambda k: (k[0] + k[1], k))
        c = rem.pop((i, j))
        if c == 0:
            continue
        if i == 0 or j == 0:
            return None
        q = (i - 1, j - 1)
        quot[q] = quot.get(q, 0) + c
        rem[q] = rem.get(q, 0) + c  # subtract c*x^q*(xy - 1) from the remainder
        if rem[q] == 0:
            del rem[q]
    return CorankNullityPoly({k: v for k, v in quot.items() if v})


def multiply_by_xy_minus_one(poly: CorankNullityPoly) -> CorankNullityPoly:
    out: dict = {}
    for (i, j), c in poly.coeffs.items():
        out[(i + 1, j + 1)] = out.get((i + 1, j + 1), 0) + c
        out[(i, j)] = out.get((i, j), 0) - c
    return CorankNullityPoly({k: v for k, v in out.items() if v})


def parse_poly(text: str) -> CorankNullityPoly:
    """Parse sums like ``x^4 + 7x^3 - 2xy + 20``."""
    import re

    s = text.replace(" ", "").replace("−", "-")
    if s and s[0] not in "+-":
        s = "+" + s
    out: dict = {}
    for sign, coef, body in re.findall(r"([+-])(\d*)((?:[xy](?:\^\d+)?)*)", s):
        if not coef and not body:
            continue
        c = int(coef) if coef else 1
        i = j = 0
        for var, exp in re.findall(r"([xy])(?:\^(\d+))?", body):
            e = int(exp) if exp else 1
            if var == "x":
                i += e
            else:
                j += e
        out[(i, j)] = out.get((i, j), 0) + (c if sign == "+" else -c)
    return CorankNullityPoly({k: v for k, v in out.items() if v})


__all__ = [
    "GroundMatrix",
    "CorankNullityPoly",
    "decode_matroid_matrix",
    "with_characteristic",
    "corank_nullity",
    "corank_nullity_naive",
    "char_correction",
    "divide_by_xy_minus_one",
    "multiply_by_xy_minus_one",
    "parse_poly",
]
