"""Weak maps between matroids (maps of pointed ground sets, 0 the basepoint)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import NotWeakMap
from .matroid import Matroid, from_mask, to_mask


@dataclass(frozen=True)
class WeakMapFlags:
    weak: bool
    complete: bool
    nondegenerate: bool


def _check_table(table: Sequence[int], m1: Matroid, m2: Matroid) -> tuple[int, ...]:
    table = tuple(int(x) for x in table)
    if len(table) != m1.n + 1:
        raise ValueError(f"map table needs {m1.n + 1} entries (index 0 is the basepoint)")
    if table[0] != 0:
        raise ValueError("a weak map must send the basepoint 0 to 0")
    if any(not 0 <= x <= m2.n for x in table):
        raise ValueError(f"map values must lie in 0..{m2.n}")
    return table


def _image_independent(table, subset, m2: Matroid) -> bool:
    """True when f restricted to ``subset`` is injective and f(subset) is independent in M2+."""
    img = [table[i] for i in subset]
    if 0 in img or len(set(img)) != len(img):
        return False
    return m2.is_independent(img)


def is_weak(table, m1: Matroid, m2: Matroid, *, exhaustive: bool = False) -> bool:
    """Weak-map condition.

    A dependent set of M1 pulls back a dependent image as soon as one of its
    circuits does, so checking circuits is equivalent to checking every
    subset; ``exhaustive=True`` runs the literal subset scan instead.
    """
    if exhaustive:
        for size in range(m1.n + 1):
            for sub in itertools.combinations(range(1, m1.n + 1), size):
                if _image_independent(table, sub, m2) and not m1.is_independent(sub):
                    return False
        return True
    return not any(_image_independent(table, c, m2) for c in m1.circuits)


def is_complete(table, m1: Matroid) -> bool:
    zero = {i for i in range(1, m1.n + 1) if table[i] == 0}
    return all(len(zero.intersection(c)) != 1 for c in m1.circuits)


def check_weak_map(table: Sequence[int], m1: Matroid, m2: Matroid, *, exhaustive: bool = False) -> WeakMapFlags:
    table = _check_table(table, m1, m2)
    return WeakMapFlags(
        weak=is_weak(table, m1, m2, exhaustive=exhaustive),
        complete=is_complete(table, m1),
        nondegenerate=all(x != 0 for x in table[1:]),
    )


class WeakMap:
    """A verified weak map; construction raises ``NotWeakMap`` otherwise."""

    def __init__(self, source: Matroid, target: Matroid, table: Sequence[int]):
        self.source = source
        self.target = target
        self.table = _check_table(table, source, target)
        self.flags = check_weak_map(self.table, source, target)
        if not self.flags.weak:
            raise NotWeakMap("some independent image pulls back to a dependent set")

    @classmethod
    def identity(cls, m: Matroid) -> WeakMap:
        return cls(m, m, range(m.n + 1))

    @property
    def complete(self) -> bool:
        return self.flags.complete

    @property
    def nondegenerate(self) -> bool:
        return self.flags.nondegenerate

    def __call__(self, i: int) -> int:
        return self.table[i]

    def kernel(self) -> tuple[int, ...]:
        """f^{-1}(0) minus the basepoint."""
        return tuple(i for i in range(1, self.source.n + 1) if self.table[i] == 0)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted({x for x in self.table[1:] if x}))

    def __repr__(self):
        return f"WeakMap({list(self.table[1:])}, complete={self.complete}, nondegenerate={self.nondegenerate})"


def compose_weak(f: WeakMap, g: WeakMap) -> WeakMap:
    """g after f."""
    if f.target != g.source:
        raise ValueError("maps are not composable: target of f differs from source of g")
    h = WeakMap(f.source, g.target, [g.table[x] for x in f.table])
    if f.complete and g.complete and not h.complete:
        raise AssertionError("composite of complete weak maps failed to be complete")
    if f.nondegenerate and g.nondegenerate and not h.nondegenerate:
        raise AssertionError("composite of nondegenerate weak maps is degenerate")
    return h


def epimorphism_obstructions(f: WeakMap) -> list[int]:
    """Elements of the target that rule out f being an epimorphism.

    Every target element outside f(S1) must be a loop or parallel to an
    element of f(S1); the ones that are neither are returned.
    """
    img = set(f.image())
    loops = set(f.target.loops())
    bad = []
    for j in range(1, f.target.n + 1):
        if j in img or j in loops:
            continue
        if not any(f.target.is_dependent((j, i)) for i in img):
            bad.append(j)
    return bad


def simplification_map(m: Matroid) -> WeakMap:
    simple, _, table = m.simplify()
    return WeakMap(m, simple, table)


__all__ = [
    "WeakMap", "WeakMapFlags", "check_weak_map", "compose_weak", "epimorphism_obstructions",
    "is_weak", "is_complete", "simplification_map", "to_mask", "from_mask",
]
