"""Orlik-Solomon algebras in no-broken-circuit coordinates.

Normal forms are computed once per matroid with integer coefficients (the
rewriting rules only ever use +-1), then reduced into whichever field a
computation asks for. Broken circuits are taken with respect to the natural
order 1 < 2 < ... < n.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import IncompleteMap
from .fields import FieldSpec, Q
from .matroid import Matroid, from_mask, popcount, to_mask
from .weakmap import WeakMap

Monomial = tuple[int, ...]


def sort_sign(seq: Sequence[int]) -> tuple[int, Monomial]:
    """Sign of the sorting permutation and the sorted tuple (sign 0 on repeats)."""
    s = list(seq)
    if len(set(s)) != len(s):
        return 0, ()
    inversions = sum(1 for a in range(len(s)) for b in range(a + 1, len(s)) if s[a] > s[b])
    return (-1) ** inversions, tuple(sorted(s))


def _add_into(acc: dict, terms: dict, scale: int):
    for k, c in terms.items():
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


class OSAlgebra:
    """A(M) with its NBC basis, integer normal forms and multiplication tables."""

    def __init__(self, matroid: Matroid):
        self.matroid = matroid
        self.n = matroid.n
        self.rank = matroid.rank()
        self.zero_algebra = bool(matroid.loops())
        self._broken: list[tuple[int, Monomial]] = []
        for c in matroid.circuits:
            self._broken.append((to_mask(c[1:]), c))
        self._broken.sort(key=lambda t: (popcount(t[0]), t[1]))
        self.basis: list[list[Monomial]] = self._nbc_basis()
        self.index: list[dict[Monomial, int]] = [{s: i for i, s in enumerate(b)} for b in self.basis]
        self._nf_cache: dict[Monomial, dict[Monomial, int]] = {}
        self._lock = threading.Lock()
        self._right_mult: dict[int, np.ndarray] = {}
        self._boundary: dict[int, np.ndarray] = {}
        self._kernel: dict[tuple[int, FieldSpec], np.ndarray] = {}

    # -- basis ---------------------------------------------------------------

    def _nbc_basis(self) -> list[list[Monomial]]:
        if self.zero_algebra:
            return [[] for _ in range(self.rank + 1)]
        bcs = [b for b, _ in self._broken]
        out: list[list[Monomial]] = [[()]]
        layer = [0]
        for _ in range(self.rank):
            nxt = []
            for m in layer:
                top = m.bit_length()
                for e in range(top + 1, self.n + 1):
                    mm = m | (1 << (e - 1))
                    if any(b & mm == b for b in bcs):
                        continue
                    if self.matroid.is_independent(mm):
                        nxt.append(mm)
            layer = nxt
            out.append(sorted(from_mask(m) for m in nxt))
        return out

    def dims(self) -> list[int]:
        return [len(b) for b in self.basis]

    def dim(self, p: int) -> int:
        return len(self.basis[p]) if 0 <= p <= self.rank else 0

    # -- normal form ---------------------------------------------------------

    def normal_form(self, seq: Iterable[int]) -> dict[Monomial, int]:
        """e_{s1} e_{s2} ... in NBC coordinates (integer coefficients)."""
        sign, s = sort_sign(tuple(seq))
        if sign == 0 or self.zero_algebra:
            return {}
        nf = self._nf_sorted(s)
        return {k: sign * c for k, c in nf.items()} if sign != 1 else dict(nf)

    def _nf_sorted(self, s: Monomial) -> dict[Monomial, int]:
        hit = self._nf_cache.get(s)
        if hit is not None:
            return hit
        m = to_mask(s)
        if not self.matroid.is_independent(m):
            res: dict[Monomial, int] = {}
        else:
            found = next(((b, c) for b, c in self._broken if b & m == b), None)
            if found is None:
                res = {s: 1}
            else:
                res = self._rewrite(s, found[1])
        self._nf_cache[s] = res
        return res

    def _rewrite(self, s: Monomial, circuit: Monomial) -> dict[Monomial, int]:
        # 0 = d(e_C) = sum_j (-1)^j e_{C - c_j}; solve for the j = 0 term
        broken = circuit[1:]
        rest = tuple(x for x in s if x not in broken)
        eps, _ = sort_sign(broken + rest)
        res: dict[Monomial, int] = {}
        for j in range(1, len(circuit)):
            term = circuit[:j] + circuit[j + 1:]
            coeff = -eps * (-1) ** j
            sign, srt = sort_sign(term + rest)
            if sign == 0:
                continue
            _add_into(res, self._nf_sorted(srt), coeff * sign)
        return res

    # -- matrices ------------------------------------------------------------

    def right_mult_tensor(self, p: int) -> np.ndarray:
        """Integer array T of shape (n, dim A^p, dim A^(p+1)) with T[i-1] = (a -> a e_i)."""
        t = self._right_mult.get(p)
        if t is not None:
            return t
        rows, cols = self.dim(p), self.dim(p + 1)
        t = np.zeros((self.n, rows, cols), dtype=object)
        if rows and cols:
            idx = self.index[p + 1]
            for r, s in enumerate(self.basis[p]):
                for i in range(1, self.n + 1):
                    for mono, c in self.normal_form(s + (i,)).items():
                        t[i - 1, r, idx[mono]] += c
        with self._lock:
            self._right_mult[p] = t
        return t

    def right_mult_matrix(self, v: Sequence[int], p: int) -> np.ndarray:
        """Integer matrix of a -> a v on A^p for an integer vector v."""
        t = self.right_mult_tensor(p)
        if t.shape[1] == 0 or t.shape[2] == 0:
            return np.zeros(t.shape[1:], dtype=object)
        vv = np.array([int(x) for x in v], dtype=object)
        return np.tensordot(vv, t, axes=(0, 0))

    def boundary_matrix(self, p: int) -> np.ndarray:
        """Integer matrix of the derivation A^p -> A^(p-1) (rows indexed by A^p)."""
        b = self._boundary.get(p)
        if b is not None:
            return b
        rows, cols = self.dim(p), self.dim(p - 1)
        b = np.zeros((rows, cols), dtype=object)
        if p >= 1 and rows and cols:
            idx = self.index[p - 1]
            for r, s in enumerate(self.basis[p]):
                for j in range(len(s)):
                    face = s[:j] + s[j + 1:]
                    for mono, c in self.normal_form(face).items():
                        b[r, idx[mono]] += (-1) ** j * c
        with self._lock:
            self._boundary[p] = b
        return b

    def projective_kernel(self, p: int, fld: FieldSpec = Q) -> np.ndarray:
        """Rows spanning the projective part ker(d) in degree p, in NBC coordinates.

        Over Q the rows are scaled to primitive integer vectors; over F_p they
        are integers in [0, p).
        """
        key = (p, fld)
        k = self._kernel.get(key)
        if k is not None:
            return k
        d = self.dim(p)
        if p == 0:
            rows = [[1]] if d else []
        else:
            b = self.boundary_matrix(p)
            cols = [list(b[:, j]) for j in range(b.shape[1])]
            rows = linalg.nullspace(cols, d, fld) if cols else linalg.identity(d, fld)
        if fld.is_rational:
            from .fields import primitive_row
            rows = [primitive_row(r) for r in rows]
        k = linalg.as_int_matrix(rows, d) if rows else np.zeros((0, d), dtype=object)
        with self._lock:
            self._kernel[key] = k
        return k

    def projective_dims(self, fld: FieldSpec = Q) -> list[int]:
        return [self.projective_kernel(p, fld).shape[0] for p in range(self.rank + 1)]

    # -- elements ------------------------------------------------------------

    def element(self, coeffs: dict, degree: int, fld: FieldSpec = Q) -> OsElement:
        return OsElement(self, fld, degree, coeffs)

    def monomial(self, seq: Iterable[int], fld: FieldSpec = Q) -> OsElement:
        seq = tuple(seq)
        return OsElement(self, fld, len(seq), self.normal_form(seq))

    def generator(self, i: int, fld: FieldSpec = Q) -> OsElement:
        return self.monomial((i,), fld)

    def one(self, fld: FieldSpec = Q) -> OsElement:
        return self.monomial((), fld)

    def linear_form(self, v: Sequence, fld: FieldSpec = Q) -> OsElement:
        """sum_i v_i e_i, for a length-n coefficient vector."""
        if len(v) != self.n:
            raise ValueError(f"need {self.n} coefficients, got {len(v)}")
        out = OsElement(self, fld, 1, {})
        for i, c in enumerate(v, 1):
            if c:
                out = out + self.generator(i, fld) * c
        return out

    def __repr__(self):
        return f"OSAlgebra(n={self.n}, dims={self.dims()})"


@lru_cache(maxsize=512)
def build_os(matroid: Matroid) -> OSAlgebra:
    """The (memoized) OS algebra of a matroid; its normal forms serve every field."""
    return OSAlgebra(matroid)


@dataclass
class OsElement:
    """Homogeneous element of A(M) over a field, sparse in NBC coordinates."""

    algebra: OSAlgebra
    field: FieldSpec
    degree: int
    coeffs: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, c in self.coeffs.items():
            c = self.field.coerce(c)
            if c:
                clean[tuple(k)] = c
        for k in clean:
            if len(k) != self.degree or k not in self.algebra.index[self.degree]:
                raise ValueError(f"{k} is not an NBC monomial of degree {self.degree}")
        self.coeffs = clean

    def _same(self, other: OsElement):
        if other.algebra is not self.algebra and other.algebra.matroid != self.algebra.matroid:
            raise ValueError("elements live in different algebras")
        self.field.check_same(other.field)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: OsElement) -> OsElement:
        self._same(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("only homogeneous elements of equal degree can be added")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = self.field.add(out.get(k, self.field.zero()), c)
        return OsElement(self.algebra, self.field, self.degree, out)

    def __neg__(self) -> OsElement:
        return OsElement(self.algebra, self.field, self.degree,
                         {k: self.field.neg(c) for k, c in self.coeffs.items()})

    def __sub__(self, other: OsElement) -> OsElement:
        return self + (-other)

    def __mul__(self, other) -> OsElement:
        if not isinstance(other, OsElement):
            s = self.field.coerce(other)
            return OsElement(self.algebra, self.field, self.degree,
                             {k: self.field.mul(c, s) for k, c in self.coeffs.items()})
        return multiply(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, OsElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs and self.field == other.field

    def vector(self) -> list:
        """Dense coordinates in the degree-``degree`` NBC basis."""
        idx = self.algebra.index[self.degree] if self.degree <= self.algebra.rank else {}
        out = [self.field.zero()] * len(idx)
        for k, c in self.coeffs.items():
            out[idx[k]] = c
        return out

    def boundary(self) -> OsElement:
        return boundary(self)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{self.field.to_json(c)}*e{''.join(map(str, k)) if k else '()'}"
                 for k, c in sorted(self.coeffs.items())]
        return " + ".join(parts)


def multiply(a: OsElement, b: OsElement) -> OsElement:
    a._same(b)
    alg, fld = a.algebra, a.field
    deg = a.degree + b.degree
    if deg > alg.rank:
        return OsElement(alg, fld, deg, {})
    out: dict = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            c = fld.mul(ca, cb)
            for mono, s in alg.normal_form(ka + kb).items():
                out[mono] = fld.add(out.get(mono, fld.zero()), fld.mul(c, fld.coerce(s)))
    return OsElement(alg, fld, deg, out)


def boundary(a: OsElement) -> OsElement:
    alg, fld = a.algebra, a.field
    if a.degree == 0:
        return OsElement(alg, fld, 0, {})
    out: dict = {}
    for k, c in a.coeffs.items():
        for j in range(len(k)):
            face = k[:j] + k[j + 1:]
            for mono, s in alg.normal_form(face).items():
                out[mono] = fld.add(out.get(mono, fld.zero()), fld.mul(c, fld.coerce((-1) ** j * s)))
    return OsElement(alg, fld, a.degree - 1, out)


def normal_form(matroid: Matroid, monomial: Iterable[int], fld: FieldSpec = Q) -> OsElement:
    return build_os(matroid).monomial(monomial, fld)


def induced_map(f: WeakMap) -> list[np.ndarray]:
    """Per-degree integer matrices of A(f): A(M1) -> A(M2) for a complete weak map.

    Row r of the degree-p matrix is the image of the r-th NBC monomial of
    A^p(M1); e_i goes to e_{f(i)} and to 0 when f(i) = 0.
    """
    if not f.complete:
        raise IncompleteMap("the map is not complete, so it induces no algebra map")
    src, dst = build_os(f.source), build_os(f.target)
    mats = []
    for p in range(src.rank + 1):
        rows, cols = src.dim(p), dst.dim(p)
        m = np.zeros((rows, cols), dtype=object)
        for r, s in enumerate(src.basis[p]):
            img = [f.table[i] for i in s]
            if 0 in img:
                continue
            for mono, c in dst.normal_form(img).items():
                m[r, dst.index[p][mono]] += c
        mats.append(m)
    return mats


def hilbert_series(matroid: Matroid) -> list[int]:
    return build_os(matroid).dims()


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out
