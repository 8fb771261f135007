"""Exact linear algebra over Q and F_p.

Ranks over Q use fraction-free (Bareiss) elimination on integer matrices
held in numpy object arrays, so the inner updates run as vectorised Python
int arithmetic. Over F_p with p < 2**31 the same elimination runs in int64.
Echelon forms and kernels are computed with ordinary Gauss-Jordan on
Fractions, which is fine for the small subspace computations they serve.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

import numpy as np

from .fields import FieldSpec, integer_row

_INT64_PRIME_LIMIT = 1 << 31


def _as_object_int(rows, ncols: int | None = None) -> np.ndarray:
    rows = [integer_row(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    a = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        a[i, :] = r
    return a


def bareiss_rank(a: np.ndarray) -> int:
    """Rank of an integer matrix (object dtype, modified in place)."""
    m, n = a.shape
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        col = a[r:, c]
        nz = np.flatnonzero(col != 0)
        if nz.size == 0:
            continue
        piv_row = r + int(nz[0])
        if piv_row != r:
            a[[r, piv_row]] = a[[piv_row, r]]
        piv = a[r, c]
        if r + 1 < m and c + 1 < n:
            below = a[r + 1:, c]
            a[r + 1:, c + 1:] = (a[r + 1:, c + 1:] * piv - np.outer(below, a[r, c + 1:])) // prev
        a[r + 1:, c] = 0
        prev = piv
        r += 1
    return r


def _modp_rank_int64(a: np.ndarray, p: int) -> int:
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv_row = r + int(nz[0])
        if piv_row != r:
            a[[r, piv_row]] = a[[piv_row, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        if r + 1 < m:
            f = a[r + 1:, c].copy()
            a[r + 1:, c:] = (a[r + 1:, c:] - np.outer(f, a[r, c:])) % p
        r += 1
    return r


def _modp_rank_object(a: np.ndarray, p: int) -> int:
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c] % p != 0)
        if nz.size == 0:
            continue
        piv_row = r + int(nz[0])
        if piv_row != r:
            a[[r, piv_row]] = a[[piv_row, r]]
        inv = pow(int(a[r, c]) % p, -1, p)
        a[r, c:] = a[r, c:] * inv % p
        if r + 1 < m:
            f = a[r + 1:, c].copy()
            a[r + 1:, c:] = (a[r + 1:, c:] - np.outer(f, a[r, c:])) % p
        r += 1
    return r


def rank(rows, field: FieldSpec) -> int:
    """Exact rank of a matrix given as a sequence of rows or a 2-d array."""
    if isinstance(rows, np.ndarray):
        if rows.size == 0:
            return 0
        if field.is_rational:
            if rows.dtype == object and all(isinstance(x, int) for x in rows.flat):
                return bareiss_rank(rows.copy())
            if rows.dtype != object:
                return bareiss_rank(rows.astype(object))
            rows = rows.tolist()
        else:
            p = field.p
            if p < _INT64_PRIME_LIMIT:
                return _modp_rank_int64(np.asarray(rows.astype(object) % p, dtype=np.int64), p)
            return _modp_rank_object(rows.astype(object) % p, p)
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if field.is_rational:
        return bareiss_rank(_as_object_int(rows))
    p = field.p
    ints = [[field.coerce(x) for x in r] for r in rows]
    if p < _INT64_PRIME_LIMIT:
        return _modp_rank_int64(np.array(ints, dtype=np.int64), p)
    return _modp_rank_object(np.array(ints, dtype=object), p)


def rref(rows, field: FieldSpec, ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    mat = [field.vector(r) for r in rows]
    if not mat:
        return [], []
    n = len(mat[0]) if ncols is None else ncols
    zero = field.zero()
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != zero), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(x, inv) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != zero:
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows, ncols: int, field: FieldSpec) -> list[list]:
    """Basis of {x : A x = 0}, one vector per free column, in RREF-dual form."""
    red, pivots = rref(rows, field, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [field.zero()] * ncols
        x[f] = field.one()
        for row, pc in zip(red, pivots):
            x[pc] = field.neg(row[f])
        basis.append(x)
    return basis


def left_kernel(rows, field: FieldSpec) -> list[list]:
    """Basis of {y : y A = 0} for A given by ``rows``."""
    if not rows:
        return []
    cols = [list(c) for c in zip(*rows)]
    return nullspace(cols, len(rows), field)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: FieldSpec) -> list[list]:
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    zero = field.zero()
    out = []
    bt = list(zip(*b))
    for row in a:
        out_row = []
        for col in bt:
            s = zero
            for x, y in zip(row, col):
                if x and y:
                    s = field.add(s, field.mul(x, y))
            out_row.append(s)
        out.append(out_row)
    return out


def identity(n: int, field: FieldSpec) -> list[list]:
    return [[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]


# -- generic rank of linear pencils ------------------------------------------

def pencil_at(mats: Sequence[np.ndarray], t: Sequence[int], field: FieldSpec) -> np.ndarray:
    """Evaluate sum_j t_j * mats[j] (integer matrices) at an integer point."""
    out = np.zeros(mats[0].shape, dtype=object)
    for tj, m in zip(t, mats):
        if tj:
            out = out + m * tj
    if not field.is_rational:
        out = out % field.p
    return out


def simplex_points(nvars: int, degree: int):
    """Nonnegative integer points with coordinate sum <= degree, by increasing sum."""
    for total in range(degree + 1):
        for cut in itertools.combinations(range(total + nvars - 1), nvars - 1):
            # stars and bars: the gaps between the cuts are the coordinates
            prev, point = -1, []
            for c in cut:
                point.append(c - prev - 1)
                prev = c
            point.append(total + nvars - 2 - prev)
            yield tuple(point)


def generic_rank(mats: Sequence[np.ndarray], field: FieldSpec, *, seed: int = 0,
                 box: int = 10**4) -> tuple[int, int]:
    """Exact rank of the pencil sum_j t_j M_j over the function field k(t).

    The pencil is homogeneous, so setting t_1 = 1 loses nothing. A nonzero
    (r+1)-minor then has total degree at most r+1 in the remaining k-1
    variables, and such a polynomial cannot vanish on every lattice point
    x >= 0 with x_2 + ... + x_k <= r+1 (restrict to x_k = 0 and induct).
    The maximum rank over that simplex therefore is the generic rank.
    Returns the rank and the number of evaluations spent.

    Over F_p the points need p >= r+2 distinct values; ``ValueError`` is
    raised when the field is too small for the certificate.
    """
    k = len(mats)
    if k == 0 or mats[0].size == 0:
        return 0, 0
    rng = random.Random(seed)
    if field.is_rational:
        t0 = [1] + [rng.randint(-box, box) for _ in range(k - 1)]
    else:
        t0 = [1] + [rng.randrange(field.p) for _ in range(k - 1)]
    r = rank(pencil_at(mats, t0, field), field)
    evals = 1
    cap = min(mats[0].shape)
    if k == 1:
        return r, evals
    while True:
        if r == cap:
            return r, evals
        size = r + 2
        if not field.is_rational and size > field.p:
            raise ValueError(f"F{field.p} is too small for an exact rank certificate")
        bumped = False
        for g in simplex_points(k - 1, size - 1):
            rr = rank(pencil_at(mats, (1,) + g, field), field)
            evals += 1
            if rr > r:
                r = rr
                bumped = True
                break
        if not bumped:
            return r, evals


def as_int_matrix(rows: Sequence[Sequence], ncols: int) -> np.ndarray:
    a = np.zeros((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        a[i, :] = integer_row(r)
    return a


def is_zero_vector(v) -> bool:
    return all(x == 0 for x in v)


def fraction_vector(v) -> list[Fraction]:
    return [Fraction(x) for x in v]
