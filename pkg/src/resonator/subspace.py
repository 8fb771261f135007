"""Linear subspaces of k^n held in canonical reduced row echelon form."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .fields import FieldSpec, Q


@dataclass(frozen=True)
class Subspace:
    ambient: int
    field: FieldSpec
    basis: tuple[tuple, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int, fld: FieldSpec = Q) -> Subspace:
        rows = [fld.vector(v) for v in vectors]
        for r in rows:
            if len(r) != ambient:
                raise ValueError(f"vector of length {len(r)} in a {ambient}-dimensional space")
        red, _ = linalg.rref(rows, fld, ambient) if rows else ([], [])
        return cls(ambient, fld, tuple(tuple(r) for r in red))

    @classmethod
    def from_equations(cls, equations: Iterable[Sequence], ambient: int, fld: FieldSpec = Q) -> Subspace:
        """{x : <a, x> = 0 for every equation a}."""
        eqs = [fld.vector(e) for e in equations]
        if not eqs:
            return cls.full(ambient, fld)
        return cls.span(linalg.nullspace(eqs, ambient, fld), ambient, fld)

    @classmethod
    def full(cls, ambient: int, fld: FieldSpec = Q) -> Subspace:
        return cls.span(linalg.identity(ambient, fld), ambient, fld)

    @classmethod
    def zero(cls, ambient: int, fld: FieldSpec = Q) -> Subspace:
        return cls(ambient, fld, ())

    @classmethod
    def vbar(cls, ambient: int, fld: FieldSpec = Q) -> Subspace:
        """Vectors with coordinate sum zero."""
        return cls.from_equations([[1] * ambient], ambient, fld)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def equations(self) -> list[list]:
        """A basis of the annihilator."""
        if not self.basis:
            return linalg.identity(self.ambient, self.field)
        return linalg.nullspace([list(r) for r in self.basis], self.ambient, self.field)

    def contains_vector(self, v: Sequence) -> bool:
        v = self.field.vector(v)
        if len(v) != self.ambient:
            raise ValueError("vector length does not match the ambient space")
        return linalg.rank([list(r) for r in self.basis] + [v], self.field) == self.dim

    def contains(self, other: Subspace) -> bool:
        self._same(other)
        if other.dim == 0:
            return True
        rows = [list(r) for r in self.basis] + [list(r) for r in other.basis]
        return linalg.rank(rows, self.field) == self.dim

    def intersect(self, other: Subspace) -> Subspace:
        self._same(other)
        return Subspace.from_equations(self.equations() + other.equations(), self.ambient, self.field)

    def __add__(self, other: Subspace) -> Subspace:
        self._same(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient, self.field)

    def _same(self, other: Subspace):
        self.field.check_same(other.field)
        if self.ambient != other.ambient:
            raise ValueError("subspaces live in different ambient spaces")

    def in_vbar(self) -> bool:
        return all(self.field.coerce(sum(r)) == 0 for r in self.basis)

    def point(self, params: Sequence) -> list:
        """The combination sum_j params[j] * basis[j]."""
        if len(params) != self.dim:
            raise ValueError(f"need {self.dim} parameters")
        f = self.field
        out = [f.zero()] * self.ambient
        for t, row in zip(params, self.basis):
            t = f.coerce(t)
            if t:
                out = [f.add(x, f.mul(t, y)) for x, y in zip(out, row)]
        return out

    def sample(self, rng: random.Random, box: int = 10**4) -> list:
        """A point with parameters uniform in [-box, box] (Q) or in F_p."""
        if self.field.is_rational:
            params = [rng.randint(-box, box) for _ in range(self.dim)]
        else:
            params = [rng.randrange(self.field.p) for _ in range(self.dim)]
        return self.point(params)

    def permute(self, sigma: Sequence[int]) -> Subspace:
        """Image under the coordinate permutation (sigma v)_{sigma(i)} = v_i (sigma 1-based)."""
        rows = []
        for r in self.basis:
            out = [None] * self.ambient
            for i, x in enumerate(r):
                out[sigma[i] - 1] = x
            rows.append(out)
        return Subspace.span(rows, self.ambient, self.field)

    def collapse(self, table: Sequence[int], ambient: int) -> Subspace:
        """Image under v -> w with w_j = sum of v_i over table[i] = j (table 1-based, 0 drops i)."""
        f = self.field
        rows = []
        for r in self.basis:
            out = [f.zero()] * ambient
            for i, x in enumerate(r, 1):
                if table[i]:
                    out[table[i] - 1] = f.add(out[table[i] - 1], x)
            rows.append(out)
        return Subspace.span(rows, ambient, f)

    def to_json(self) -> list[list]:
        return [[self.field.to_json(x) for x in r] for r in self.basis]

    def sort_key(self) -> tuple:
        return (self.dim, tuple(tuple(Fraction(x) for x in r) for r in self.basis))

    def __str__(self):
        rows = ["(" + ", ".join(str(self.field.to_json(x)) for x in r) + ")" for r in self.basis]
        return f"span[{'; '.join(rows)}]" if rows else "{0}"
