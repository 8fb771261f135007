"""Multinets: verification, the maps to and from A(U_{2,k}), and search."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from . import linalg
from .bounds import q_subspace
from .errors import CharDividesBlockSize, ParallelSplit
from .fields import FieldSpec, Q
from .matroid import Matroid, Partition, uniform
from .osalgebra import build_os, induced_map
from .resonance import cohomology_profile
from .subspace import Subspace
from .weakmap import WeakMap


@dataclass(frozen=True)
class Multinet:
    blocks: Partition
    flats: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...] | None = None  # per element, when searched up to multiplicity

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def d(self) -> int:
        mult = self.multiplicities
        b = self.blocks.blocks[0]
        return sum(mult[i - 1] for i in b) if mult else len(b)

    def to_json(self) -> dict:
        out = {"k": self.k, "d": self.d, "blocks": [list(b) for b in self.blocks],
               "flats": [list(x) for x in self.flats]}
        if self.multiplicities:
            out["multiplicities"] = list(self.multiplicities)
        return out


@dataclass
class MultinetVerdict:
    axioms: dict[str, bool]
    details: dict = dc_field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(self.axioms.values())

    def to_json(self) -> dict:
        return {"valid": self.valid, "axioms": dict(self.axioms), "details": self.details}


def _span(m: Matroid, i: int, j: int) -> tuple[int, ...]:
    return m.closure((i, j))


def _block_graph_connected(m: Matroid, block: Sequence[int], xs: set) -> bool:
    block = list(block)
    if len(block) <= 1:
        return True
    seen = {block[0]}
    stack = [block[0]]
    while stack:
        a = stack.pop()
        for b in block:
            if b not in seen and _span(m, a, b) not in xs:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(block)


def verify_multinet(m: Matroid, blocks: Partition, flats: Iterable[Iterable[int]]) -> MultinetVerdict:
    """Check the four multinet axioms (plus k >= 3), each exhaustively."""
    if blocks.n != m.n:
        raise ValueError("partition does not cover the ground set")
    xs = {tuple(sorted(x)) for x in flats}
    for x in xs:
        if not m.is_flat(x) or m.rank(x) != 2:
            raise ValueError(f"{x} is not a rank-2 flat")
        if len(m.components(x)) != 1:
            raise ValueError(f"{x} is a reducible flat")
    sizes = [len(b) for b in blocks]
    index = blocks.block_index()
    bad_pairs = []
    for i, j in itertools.combinations(range(1, m.n + 1), 2):
        if index[i] != index[j] and _span(m, i, j) not in xs:
            bad_pairs.append((i, j))
    unbalanced = []
    for x in sorted(xs):
        counts = [len(set(b) & set(x)) for b in blocks]
        if len(set(counts)) != 1:
            unbalanced.append(x)
    disconnected = [b for b in blocks if not _block_graph_connected(m, b, xs)]
    axioms = {
        "k_at_least_3": len(blocks) >= 3,
        "equal_block_sizes": len(set(sizes)) == 1,
        "cross_pairs_span_flats": not bad_pairs,
        "balanced_flats": not unbalanced,
        "blocks_connected": not disconnected,
    }
    details = {"block_sizes": sizes}
    if bad_pairs:
        details["bad_pairs"] = [list(p) for p in bad_pairs[:10]]
    if unbalanced:
        details["unbalanced_flats"] = [list(x) for x in unbalanced]
    if disconnected:
        details["disconnected_blocks"] = [list(b) for b in disconnected]
    return MultinetVerdict(axioms, details)


def multinet_component(blocks: Partition, fld: FieldSpec = Q) -> Subspace:
    """Q_L intersected with V-bar; dimension k - 1."""
    return q_subspace(blocks, fld).intersect(Subspace.vbar(blocks.n, fld))


def parallel_directions(m: Matroid, fld: FieldSpec = Q) -> Subspace:
    """Span of e_i - e_j over parallel pairs: the kernel of V -> A^1 (loops aside)."""
    rows = []
    for cls in m.parallel_classes():
        for j in cls[1:]:
            row = [0] * m.n
            row[cls[0] - 1], row[j - 1] = 1, -1
            rows.append(row)
    return Subspace.span(rows, m.n, fld)


def resonance_component(m: Matroid, blocks: Partition, fld: FieldSpec = Q) -> Subspace:
    """The full preimage in V of the multinet component: Q_L cap V-bar plus parallel directions."""
    return multinet_component(blocks, fld) + parallel_directions(m, fld)


def simplified_component(m: Matroid, blocks: Partition, fld: FieldSpec = Q) -> tuple[Matroid, Subspace]:
    """The multinet component pushed to the simplification, where parallel
    coordinates are added up and class sizes become multiplicities."""
    simple, _, table = m.simplify()
    return simple, multinet_component(blocks, fld).collapse(table, simple.n)


def partition_morphism(m: Matroid, blocks: Partition) -> WeakMap:
    """The map M -> U_{2,k} sending each element to the number of its block."""
    if m.loops():
        raise ValueError("partition morphisms are defined for loopless matroids")
    index = blocks.block_index()
    for c in m.circuits:
        if len(c) == 2 and index[c[0]] != index[c[1]]:
            raise ParallelSplit(f"parallel elements {c[0]} and {c[1]} lie in different blocks")
    k = len(blocks)
    return WeakMap(m, uniform(2, k), [0] + [index[i] for i in range(1, m.n + 1)])


@dataclass
class MultinetSection:
    """The section i_L: A(U_{2,k}) -> A(M), degree by degree over ``field``."""

    field: FieldSpec
    matrices: list[list[list]]
    ring_map: bool
    split: bool
    h1_injective: list[bool]
    h1_dims: list[int]


def multinet_section(m: Matroid, blocks: Partition, fld: FieldSpec = Q, *, samples: int = 4,
                     seed: int = 0) -> MultinetSection:
    """Build i_L, check it is a ring map with A(p_L) i_L = id, and test H^1 injectivity."""
    for b in blocks:
        if fld.divides_characteristic(len(b)):
            raise CharDividesBlockSize(f"block size {len(b)} vanishes in {fld}")
    k = len(blocks)
    source = build_os(uniform(2, k))
    target = build_os(m)
    pmap = partition_morphism(m, blocks)
    gens = []
    for b in blocks:
        el = target.linear_form([fld.div(1, len(b)) if i in b else 0 for i in range(1, m.n + 1)], fld)
        gens.append(el)
    mats = []
    for p in range(source.rank + 1):
        rows = []
        for mono in source.basis[p]:
            img = target.one(fld)
            for s in mono:
                img = img * gens[s - 1]
            rows.append(img.vector() if p <= target.rank else [])
        mats.append(rows)
    # the defining relation d(e_abc) of U_{2,k} must map to zero
    ring_map = True
    for a, b, c in itertools.combinations(range(k), 3):
        rel = gens[b] * gens[c] - gens[a] * gens[c] + gens[a] * gens[b]
        ring_map &= rel.is_zero()
    back = induced_map(pmap)
    split = True
    for p, rows in enumerate(mats):
        if not rows:
            continue
        comp = linalg.matmul(rows, [[fld.coerce(x) for x in r] for r in back[p].tolist()], fld)
        split &= comp == linalg.identity(len(rows), fld)
    comp = multinet_component(blocks, fld)
    rng = random.Random(seed)
    inj, dims = [], []
    for _ in range(samples):
        v = comp.sample(rng)
        u = [v[blocks.blocks[s][0] - 1] * len(blocks.blocks[s]) for s in range(k)]
        inj.append(_h1_injective(source, target, gens, u, v, fld))
        dims.append(cohomology_profile(m, fld, v)[1])
    return MultinetSection(fld, mats, ring_map, split, inj, dims)


def _h1_injective(source, target, gens, u, v, fld) -> bool:
    """i_L maps Z^1(U, u) into Z^1(M, v) and meets B^1(M, v) only in i_L(B^1(U, u))."""
    k = len(u)
    mult = source.right_mult_matrix([int(x) for x in _ints(u, fld)], 1)
    mult = [[fld.coerce(x) for x in r] for r in mult.tolist()]
    z_u = linalg.left_kernel(mult, fld) if mult and mult[0] else linalg.identity(k, fld)
    vform = target.linear_form(v, fld)
    images = []
    for z in z_u:
        img = None
        for s, c in enumerate(z):
            if c:
                term = gens[s] * c
                img = term if img is None else img + term
        if img is None:
            continue
        if not (img * vform).is_zero():
            return False
        images.append(img.vector())
    b_m = [vform.vector()]
    dim_z = len(z_u)
    gained = linalg.rank(images + b_m, fld) - linalg.rank(b_m, fld)
    return gained == dim_z - 1


def _ints(u, fld):
    if fld.is_rational:
        from .fields import integer_row
        return integer_row(u)
    return [int(x) for x in u]


# -- search ------------------------------------------------------------------

def search_multinets(m: Matroid, k_max: int = 4, d_max: int | None = None) -> list[Multinet]:
    """All multinets with 3 <= k <= k_max, up to permutation of the blocks.

    Parallel classes always share a block. With ``d_max`` None the class
    sizes of M are the multiplicities and blocks are subsets of [n]. Otherwise
    the search runs on the simplification (elements numbered by parallel
    class) and tries every multiplicity vector in [1, d_max]^classes with
    gcd 1.
    """
    if m.loops():
        return []
    if d_max is not None and not m.is_simple():
        m = m.simplify()[0]
    classes = m.parallel_classes()
    reps = [c[0] for c in classes]
    nc = len(classes)
    line_of: dict[tuple[int, int], tuple[int, ...]] = {}
    for a, b in itertools.combinations(range(nc), 2):
        line = m.closure((reps[a], reps[b]))
        if len(m.components(line)) == 1 and m.rank(line) == 2:
            line_of[(a, b)] = line
    found: list[Multinet] = []
    assign = [-1] * nc

    def ok_cross(c: int, s: int) -> bool:
        for c2 in range(c):
            if assign[c2] != s and (c2, c) not in line_of:
                return False
        return True

    def finish(k: int):
        groups = [[c for c in range(nc) if assign[c] == s] for s in range(k)]
        xs = {line_of[(a, b)] for a, b in itertools.combinations(range(nc), 2) if assign[a] != assign[b]}
        xs_sorted = tuple(sorted(xs))
        for g in groups:
            if not _classes_connected(g, line_of, xs):
                return
        class_sets = [set(classes[c]) for c in range(nc)]
        in_x = [[c for c in range(nc) if class_sets[c] <= set(x)] for x in xs_sorted]
        for mult in _multiplicities(classes, groups, in_x, d_max):
            blocks = Partition(tuple(tuple(sorted(i for c in g for i in classes[c])) for g in groups))
            found.append(Multinet(blocks, xs_sorted, None if d_max is None else tuple(mult)))

    def rec(c: int, used: int, k: int):
        if c == nc:
            if used == k:
                finish(k)
            return
        if nc - c < k - used:
            return
        for s in range(min(used + 1, k)):
            if ok_cross(c, s):
                assign[c] = s
                rec(c + 1, max(used, s + 1), k)
                assign[c] = -1

    for k in range(3, k_max + 1):
        rec(0, 0, k)
    found.sort(key=lambda mn: (mn.k, mn.blocks.blocks, mn.multiplicities or ()))
    return found


def _classes_connected(group, line_of, xs) -> bool:
    if len(group) <= 1:
        return True
    seen = {group[0]}
    stack = [group[0]]
    while stack:
        a = stack.pop()
        for b in group:
            if b in seen:
                continue
            key = (min(a, b), max(a, b))
            if line_of.get(key) not in xs:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(group)


def _multiplicities(classes, groups, in_x, d_max):
    """Multiplicity vectors on classes meeting the size and balance axioms."""
    nc = len(classes)
    if d_max is None:
        candidates = [tuple(len(c) for c in classes)]
    else:
        candidates = (t for t in itertools.product(range(1, d_max + 1), repeat=nc)
                      if math.gcd(*t) == 1)
    block_of = {c: s for s, g in enumerate(groups) for c in g}
    for mult in candidates:
        sizes = {sum(mult[c] for c in g) for g in groups}
        if len(sizes) != 1:
            continue
        balanced = True
        for members in in_x:
            counts = [0] * len(groups)
            for c in members:
                counts[block_of[c]] += mult[c]
            if len(set(counts)) != 1:
                balanced = False
                break
        if balanced:
            yield mult
