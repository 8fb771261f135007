"""Singular subspaces of V-bar and their factorization through truncated exterior algebras."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import NotSingularEnough
from .fields import FieldSpec, Q
from .matroid import Matroid, uniform
from .osalgebra import OSAlgebra, OsElement, build_os, induced_map
from .subspace import Subspace
from .weakmap import WeakMap


@dataclass
class SingularReport:
    subspace: Subspace
    rank: int
    is_singular: bool
    image_ranks: tuple[int, ...]  # image_ranks[q-1] = rank of Lambda^q(W) -> A^q

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def to_json(self) -> dict:
        return {"dim": self.dim, "rank": self.rank, "singular": self.is_singular,
                "image_ranks": list(self.image_ranks), "basis": self.subspace.to_json()}


def _products(alg: OSAlgebra, gens: Sequence[OsElement], q: int, fld: FieldSpec) -> list[OsElement]:
    out = []
    for combo in itertools.combinations(range(len(gens)), q):
        prod = alg.one(fld)
        for s in combo:
            prod = prod * gens[s]
        out.append(prod)
    return out


def _image_rank(alg: OSAlgebra, gens, q: int, fld: FieldSpec) -> int:
    if q > alg.rank:
        return 0
    rows = [el.vector() for el in _products(alg, gens, q, fld)]
    return linalg.rank(rows, fld) if rows else 0


def singular_rank(m: Matroid, fld: FieldSpec, w: Subspace) -> SingularReport:
    """Ranks of Lambda^q(W) -> A^q(M) for q = 1..dim W."""
    fld.check_same(w.field)
    if not w.in_vbar():
        warnings.warn("W is not contained in V-bar", stacklevel=2)
    alg = build_os(m)
    gens = [alg.linear_form(list(r), fld) for r in w.basis]
    ranks = []
    for q in range(1, w.dim + 1):
        r = _image_rank(alg, gens, q, fld)
        ranks.append(r)
        if r == 0:
            ranks.extend([0] * (w.dim - q))
            break
    top = max((q for q, r in enumerate(ranks, 1) if r), default=0)
    return SingularReport(w, top, top < w.dim, tuple(ranks))


@dataclass
class Factorization:
    """phi: A-bar(U_{q+1,k+1}) -> A(M) on the monomials u_S = prod_{s in S} (e_s - e_{k+1}).

    ``matrices[p]`` has one row per p-subset S of [k] (lexicographic order),
    holding the NBC coordinates of phi(u_S) in A^p(M).
    """

    q: int
    k: int
    field: FieldSpec
    basis: tuple[tuple, ...]
    matrices: list[list[list]]
    injective_degree1: bool

    @property
    def source(self) -> Matroid:
        return uniform(self.q + 1, self.k + 1)


def truncated_factorization(m: Matroid, fld: FieldSpec, w: Subspace, q: int,
                            basis: Sequence[Sequence] | None = None) -> Factorization:
    """Factor Lambda(W) -> A(M) through Lambda(W)/Lambda^{q+1}(W) = A-bar(U_{q+1,k+1}).

    ``basis`` fixes which vectors of W the generators e_s - e_{k+1} go to;
    by default the RREF basis of W.
    """
    fld.check_same(w.field)
    rows = [fld.vector(r) for r in (basis if basis is not None else w.basis)]
    if len(rows) != w.dim or Subspace.span(rows, w.ambient, fld) != w:
        raise ValueError("the given vectors are not a basis of W")
    k = w.dim
    alg = build_os(m)
    gens = [alg.linear_form(r, fld) for r in rows]
    if q < k and _image_rank(alg, gens, q + 1, fld):
        raise NotSingularEnough(f"Lambda^{q + 1}(W) has nonzero image in A^{q + 1}")
    mats = []
    for p in range(min(q, k) + 1):
        if p > alg.rank:
            mats.append([[] for _ in itertools.combinations(range(k), p)])
        else:
            mats.append([el.vector() for el in _products(alg, gens, p, fld)])
    injective = linalg.rank(mats[1], fld) == k if k and len(mats) > 1 else True
    return Factorization(q, k, fld, tuple(tuple(r) for r in rows), mats, injective)


def truncated_monomials(q: int, k: int, fld: FieldSpec = Q) -> list[list[list]]:
    """The u_S of A-bar(U_{q+1,k+1}) as NBC coordinate vectors of A(U_{q+1,k+1})."""
    alg = build_os(uniform(q + 1, k + 1))
    diffs = [alg.generator(s, fld) - alg.generator(k + 1, fld) for s in range(1, k + 1)]
    return [[el.vector() for el in _products(alg, diffs, p, fld)] for p in range(min(q, k) + 1)]


def split_signs(phi: Factorization, f: WeakMap) -> list[int | None]:
    """For each degree p, the scalar c with A(f)(phi(u_S)) = c u_S for all S, or None.

    ``f`` must be a complete weak map from M to U_{q+1,k+1}.
    """
    fld = phi.field
    if f.target != phi.source:
        raise ValueError("the map does not land in U_{q+1,k+1}")
    back = induced_map(f)
    expected = truncated_monomials(phi.q, phi.k, fld)
    signs: list[int | None] = []
    for p, rows in enumerate(phi.matrices):
        if p >= len(back):
            signs.append(None)
            continue
        mat = [[fld.coerce(x) for x in r] for r in back[p].tolist()]
        got = linalg.matmul(rows, mat, fld) if rows and rows[0] else [[] for _ in rows]
        sign = None
        for c in (1, -1):
            target = [[fld.mul(c, x) for x in r] for r in expected[p]]
            if got == target:
                sign = c
                break
        signs.append(sign)
    return signs
