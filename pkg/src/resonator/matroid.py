"""Matroids on [n] presented by their circuits.

Elements are the integers 1..n (0 is reserved for the basepoint loop of a
weak map). Internally a subset is an int bitmask with bit i-1 standing for
element i; the public API takes and returns sorted tuples or frozensets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import AxiomViolation, EmptyCircuit
from .fields import FieldSpec, Q
from . import linalg

# exhaustive elimination-axiom validation stays cheap below these sizes
VALIDATE_MAX_N = 10
VALIDATE_MAX_CIRCUITS = 400


def to_mask(s: Iterable[int]) -> int:
    m = 0
    for i in s:
        m |= 1 << (i - 1)
    return m


def from_mask(m: int) -> tuple[int, ...]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def popcount(m: int) -> int:
    return bin(m).count("1")


@dataclass(frozen=True, order=True)
class Flat:
    rank: int
    elements: tuple[int, ...]
    irreducible: bool

    def __len__(self):
        return len(self.elements)

    def __contains__(self, i):
        return i in self.elements

    @property
    def mask(self) -> int:
        return to_mask(self.elements)


@dataclass(frozen=True)
class Partition:
    """Partition of [n] into nonempty blocks, blocks ordered by least element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if any(not b for b in blocks):
            raise ValueError("partition blocks must be nonempty")
        seen = [x for b in blocks for x in b]
        if len(seen) != len(set(seen)):
            raise ValueError("partition blocks overlap")
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise ValueError("partition blocks must cover 1..n")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse "12|34|56" (single digits) or "1,2|3,4|10,11"."""
        blocks = []
        for part in text.split("|"):
            part = part.strip()
            if "," in part or " " in part:
                blocks.append(tuple(int(x) for x in part.replace(",", " ").split()))
            else:
                blocks.append(tuple(int(ch) for ch in part))
        return cls(tuple(blocks))

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(tuple((i,) for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_index(self) -> dict[int, int]:
        """Map element -> 1-based block number."""
        return {x: s for s, b in enumerate(self.blocks, 1) for x in b}

    def __str__(self):
        sep = "," if self.n > 9 else ""
        return "|".join(sep.join(str(x) for x in b) for b in self.blocks)


class Matroid:
    """A matroid on [n] given by its circuits.

    Instances are immutable; the rank memo is a plain dict whose entries are
    written once with deterministic values, so concurrent readers only ever
    race to store identical results.
    """

    def __init__(self, n: int, circuits: Iterable[Iterable[int]], *, validate: bool = True,
                 realizable: bool | None = None):
        if n < 0:
            raise ValueError("ground set size must be non-negative")
        cs = []
        for c in circuits:
            c = tuple(sorted(set(c)))
            if not c:
                raise EmptyCircuit("the empty set cannot be a circuit")
            if c[0] < 1 or c[-1] > n:
                raise ValueError(f"circuit {c} is not a subset of [{n}]")
            cs.append(c)
        cs = sorted(set(cs))
        self.n = n
        self.circuits: tuple[tuple[int, ...], ...] = tuple(cs)
        self._cmasks = tuple(to_mask(c) for c in cs)
        self._by_elem: list[list[int]] = [[] for _ in range(n + 1)]
        for m in self._cmasks:
            for i in from_mask(m):
                self._by_elem[i].append(m)
        self._rank_cache: dict[int, int] = {}
        self.realizable = realizable
        if validate:
            self._validate()

    def _validate(self):
        ms = self._cmasks
        for a, b in itertools.combinations(ms, 2):
            if a & b == a or a & b == b:
                raise AxiomViolation(f"circuit {from_mask(min(a, b))} is contained in another circuit")
        if self.n > VALIDATE_MAX_N and len(ms) > VALIDATE_MAX_CIRCUITS:
            return
        for a, b in itertools.combinations(ms, 2):
            common = a & b
            if not common:
                continue
            union = a | b
            for e in from_mask(common):
                rest = union & ~(1 << (e - 1))
                if not any(c & rest == c for c in ms):
                    raise AxiomViolation(
                        f"elimination fails for {from_mask(a)}, {from_mask(b)} at {e}")

    # -- identity ----------------------------------------------------------

    def key(self) -> tuple:
        return (self.n, self.circuits)

    def __eq__(self, other):
        return isinstance(other, Matroid) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank()}, circuits={len(self.circuits)})"

    def __getstate__(self):
        return {"n": self.n, "circuits": self.circuits, "realizable": self.realizable}

    def __setstate__(self, state):
        self.__init__(state["n"], state["circuits"], validate=False,
                      realizable=state["realizable"])

    @property
    def ground(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    # -- rank oracle -------------------------------------------------------

    def _mask(self, s) -> int:
        if isinstance(s, int):
            return s
        m = 0
        for i in s:
            if not 1 <= i <= self.n:
                raise ValueError(f"element {i} outside [1, {self.n}]")
            m |= 1 << (i - 1)
        return m

    def is_independent(self, s) -> bool:
        m = self._mask(s)
        return not any(c & m == c for c in self._cmasks)

    def is_dependent(self, s) -> bool:
        return not self.is_independent(s)

    def rank(self, s=None) -> int:
        """Rank of a subset (the whole ground set by default)."""
        m = self.full_mask if s is None else self._mask(s)
        r = self._rank_cache.get(m)
        if r is not None:
            return r
        indep = 0
        rest = m
        while rest:
            low = rest & -rest
            rest ^= low
            e = low.bit_length()
            trial = indep | low
            if not any(c & trial == c for c in self._by_elem[e]):
                indep = trial
        r = popcount(indep)
        self._rank_cache[m] = r
        return r

    def closure(self, s) -> tuple[int, ...]:
        return from_mask(self._closure_mask(self._mask(s)))

    def _closure_mask(self, m: int) -> int:
        r = self.rank(m)
        out = m
        for e in range(1, self.n + 1):
            b = 1 << (e - 1)
            if not m & b and self.rank(m | b) == r:
                out |= b
        return out

    def is_flat(self, s) -> bool:
        m = self._mask(s)
        return self._closure_mask(m) == m

    # -- structure ---------------------------------------------------------

    def loops(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.circuits if len(c) == 1)

    def coloops(self) -> tuple[int, ...]:
        covered = 0
        for c in self._cmasks:
            covered |= c
        return from_mask(self.full_mask & ~covered)

    def parallel_classes(self) -> list[tuple[int, ...]]:
        """Classes of non-loop elements under i ~ j iff {i, j} is dependent."""
        loops = set(self.loops())
        parent = {i: i for i in self.ground if i not in loops}
        for c in self.circuits:
            if len(c) == 2:
                a, b = c
                ra, rb = _find(parent, a), _find(parent, b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        classes: dict[int, list[int]] = {}
        for i in parent:
            classes.setdefault(_find(parent, i), []).append(i)
        return sorted(tuple(sorted(v)) for v in classes.values())

    def is_simple(self) -> bool:
        return all(len(c) > 2 for c in self.circuits)

    def components(self, s=None) -> list[tuple[int, ...]]:
        """Connected components of the restriction to ``s`` (default: all)."""
        m = self.full_mask if s is None else self._mask(s)
        elems = from_mask(m)
        parent = {i: i for i in elems}
        for c in self._cmasks:
            if c & m == c:
                es = from_mask(c)
                r0 = _find(parent, es[0])
                for x in es[1:]:
                    rx = _find(parent, x)
                    if rx != r0:
                        parent[rx] = r0
        comps: dict[int, list[int]] = {}
        for i in elems:
            comps.setdefault(_find(parent, i), []).append(i)
        return sorted(tuple(v) for v in comps.values())

    def _restriction_connected(self, m: int) -> bool:
        k = popcount(m)
        if k == 0:
            return False
        if k == 1:
            return self.rank(m) == 1
        return len(self.components(m)) == 1

    def is_connected(self) -> bool:
        """Connectivity with the conventions beta(empty) = beta(loop) = 0."""
        return self._restriction_connected(self.full_mask)

    def flats(self, max_rank: int | None = None) -> list[Flat]:
        """All flats of rank <= max_rank, sorted by (rank, elements)."""
        top = self.rank()
        if max_rank is None:
            max_rank = top
        if not 0 <= max_rank <= top:
            raise ValueError(f"max_rank must lie in [0, {top}]")
        level = {self._closure_mask(0)}
        found = set(level)
        for _ in range(max_rank):
            nxt = set()
            for f in level:
                for e in range(1, self.n + 1):
                    b = 1 << (e - 1)
                    if not f & b:
                        nxt.add(self._closure_mask(f | b))
            level = nxt
            found |= nxt
        out = [Flat(self.rank(m), from_mask(m), self._restriction_connected(m)) for m in found]
        return sorted(out)

    def irreducible_flats(self, max_rank: int, min_rank: int = 1) -> list[Flat]:
        return [f for f in self.flats(max_rank) if f.irreducible and f.rank >= min_rank]

    def characteristic_polynomial(self) -> list[int]:
        """Coefficients [c_0, ..., c_r] of chi(t) = sum c_j t^(r-j)."""
        r = self.rank()
        if self.loops():
            return [0] * (r + 1)
        flats = self.flats()
        masks = [f.mask for f in flats]
        mu: dict[int, int] = {}
        for f, m in zip(flats, masks):
            if f.rank == 0:
                mu[m] = 1
                continue
            mu[m] = -sum(mu[g] for g, fg in zip(masks, flats)
                         if fg.rank < f.rank and g & m == g)
        coeffs = [0] * (r + 1)
        for f, m in zip(flats, masks):
            coeffs[f.rank] += mu[m]
        return coeffs

    def beta(self) -> int:
        """Crapo's beta invariant, (-1)^(r-1) chi'(1)."""
        r = self.rank()
        coeffs = self.characteristic_polynomial()
        deriv = sum(c * (r - j) for j, c in enumerate(coeffs) if r - j > 0)
        return (-1) ** (r - 1) * deriv if r > 0 else 0

    def whitney_numbers(self) -> list[int]:
        """Unsigned coefficients of chi; these are the OS algebra dimensions."""
        return [abs(c) for c in self.characteristic_polynomial()]

    # -- derived matroids --------------------------------------------------

    def relabel(self, perm: Sequence[int] | dict[int, int]) -> Matroid:
        """Apply i -> perm[i] (``perm`` indexed from 1, or a dict)."""
        if not isinstance(perm, dict):
            perm = {i: perm[i - 1] for i in self.ground}
        if sorted(perm.values()) != list(self.ground):
            raise ValueError("relabelling must be a permutation of [n]")
        return Matroid(self.n, [[perm[i] for i in c] for c in self.circuits], validate=False,
                       realizable=self.realizable)

    def dual(self) -> Matroid:
        full = self.full_mask
        r = self.rank()

        def indep(m: int) -> bool:
            return self.rank(full & ~m) == r

        cs = circuits_from_oracle(self.n, indep, self.n - r + 1)
        return Matroid(self.n, cs, validate=False, realizable=self.realizable)

    def restrict(self, s) -> Matroid:
        keep = from_mask(self._mask(s))
        relabel = {old: new for new, old in enumerate(keep, 1)}
        m = self._mask(keep)
        cs = [[relabel[i] for i in c] for c, cm in zip(self.circuits, self._cmasks) if cm & m == cm]
        return Matroid(len(keep), cs, validate=False, realizable=self.realizable)

    def delete(self, s) -> Matroid:
        """Deletion M - S, relabelled order-preservingly onto [n - |S|]."""
        m = self._mask(s)
        if not m:
            raise ValueError("delete needs a nonempty set")
        return self.restrict(self.full_mask & ~m)

    def contract(self, s) -> Matroid:
        """Contraction M / S, relabelled order-preservingly onto [n - |S|]."""
        m = self._mask(s)
        if not m:
            raise ValueError("contract needs a nonempty set")
        bad = [i for i in self.loops() if m >> (i - 1) & 1]
        if bad:
            raise ValueError(f"cannot contract loop(s) {bad}")
        keep = [i for i in self.ground if not m >> (i - 1) & 1]
        rs = self.rank(m)

        def indep(sub: int) -> bool:
            big = 0
            for j, old in enumerate(keep):
                if sub >> j & 1:
                    big |= 1 << (old - 1)
            return self.rank(big | m) == popcount(sub) + rs

        cs = circuits_from_oracle(len(keep), indep, self.rank() - rs + 1)
        return Matroid(len(keep), cs, validate=False, realizable=self.realizable)

    def truncate(self, k: int) -> Matroid:
        r = self.rank()
        if not 1 <= k <= r:
            raise ValueError(f"truncation rank must lie in [1, {r}]")
        if k == r:
            return self

        def indep(m: int) -> bool:
            return popcount(m) <= k and self.is_independent(m)

        cs = circuits_from_oracle(self.n, indep, k + 1)
        return Matroid(self.n, cs, validate=False, realizable=self.realizable)

    def simplify(self) -> tuple[Matroid, Partition, tuple[int, ...]]:
        """Simplification M_s.

        Returns the simple matroid on the parallel classes (numbered in order
        of least element), the partition of [n] into those classes with each
        loop as its own block, and the quotient map as a table s[0..n] with
        s[0] = 0 and loops sent to 0.
        """
        classes = self.parallel_classes()
        table = [0] * (self.n + 1)
        for idx, cls in enumerate(classes, 1):
            for i in cls:
                table[i] = idx
        reps = [c[0] for c in classes]
        simple = self.restrict(reps)
        blocks = list(classes) + [(i,) for i in self.loops()]
        return simple, Partition(tuple(blocks)), tuple(table)

    def submatroid_on_flat(self, flat) -> Matroid:
        return self.restrict(flat)


def _find(parent: dict, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def circuits_from_oracle(n: int, independent: Callable[[int], bool], max_size: int) -> list[tuple]:
    """Minimal dependent sets of size <= max_size under an independence oracle."""
    found: list[int] = []
    for s in range(1, min(max_size, n) + 1):
        new = []
        for combo in itertools.combinations(range(n), s):
            m = 0
            for i in combo:
                m |= 1 << i
            if any(c & m == c for c in found):
                continue
            if not independent(m):
                new.append(m)
        found.extend(new)
    return [from_mask(m) for m in found]


# -- constructors ------------------------------------------------------------

def from_circuits(n: int, circuits: Iterable[Iterable[int]], realizable: bool | None = None) -> Matroid:
    """Build and validate a matroid from an explicit circuit list."""
    return Matroid(n, circuits, validate=True, realizable=realizable)


def uniform(rank: int, n: int) -> Matroid:
    if not 0 <= rank <= n:
        raise ValueError(f"U_(l,n) needs 0 <= l <= n, got l={rank}, n={n}")
    cs = itertools.combinations(range(1, n + 1), rank + 1) if rank < n else []
    return Matroid(n, cs, validate=False, realizable=True)


def free(n: int) -> Matroid:
    return uniform(n, n)


def from_graph(vertices, edges: Sequence[tuple], *, allow_self_loops: bool = False) -> Matroid:
    """Cycle matroid of a multigraph; edge k of the list becomes element k+1.

    ``vertices`` is either a count V (vertices are then 1..V) or an iterable
    of vertex labels.
    """
    vs = list(range(1, vertices + 1)) if isinstance(vertices, int) else list(vertices)
    index = {v: i for i, v in enumerate(vs)}
    es = []
    for e in edges:
        a, b = e
        if a not in index or b not in index:
            raise ValueError(f"edge {e} uses an unknown vertex")
        if a == b and not allow_self_loops:
            raise ValueError(f"self-loop {e} not permitted (pass allow_self_loops=True)")
        es.append((index[a], index[b]))

    def indep(m: int) -> bool:
        parent = list(range(len(vs)))
        j = 0
        while m:
            if m & 1:
                a, b = es[j]
                ra, rb = _find_list(parent, a), _find_list(parent, b)
                if ra == rb:
                    return False
                parent[ra] = rb
            m >>= 1
            j += 1
        return True

    parent = list(range(len(vs)))
    comps = len(vs)
    for a, b in es:
        ra, rb = _find_list(parent, a), _find_list(parent, b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    r = len(vs) - comps
    cs = circuits_from_oracle(len(es), indep, r + 1)
    return Matroid(len(es), cs, validate=False, realizable=True)


def _find_list(parent: list, x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def from_matrix(columns: Sequence[Sequence], field: FieldSpec = Q) -> Matroid:
    """Matroid of the column vectors over ``field`` (zero columns are loops)."""
    cols = [field.vector(c) for c in columns]
    if cols and len({len(c) for c in cols}) != 1:
        raise ValueError("all columns must have the same dimension")
    n = len(cols)

    def indep(m: int) -> bool:
        chosen = [cols[i] for i in range(n) if m >> i & 1]
        return linalg.rank(chosen, field) == len(chosen)

    r = linalg.rank(cols, field) if cols else 0
    cs = circuits_from_oracle(n, indep, r + 1)
    return Matroid(n, cs, validate=False, realizable=True if field.is_rational else None)


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    cs = list(m1.circuits) + [[i + m1.n for i in c] for c in m2.circuits]
    real = m1.realizable and m2.realizable
    return Matroid(m1.n + m2.n, cs, validate=False, realizable=real or None)


def parallel_connection_labels(n1: int, n2: int, base1: int, base2: int) -> list[int]:
    """Identification map from the labels of M1 (+) M2 to those of M1 o M2.

    Index k-1 of the result is the image of direct-sum label k.
    """
    out = list(range(1, n1 + 1))
    nxt = n1 + 1
    for j in range(1, n2 + 1):
        if j == base2:
            out.append(base1)
        else:
            out.append(nxt)
            nxt += 1
    return out


def parallel_connection(m1: Matroid, m2: Matroid, base1: int, base2: int | None = None) -> Matroid:
    """Parallel connection along one basepoint.

    M1 keeps its labels, M2's basepoint is identified with ``base1`` and its
    other elements are numbered n1+1, n1+2, ... in order. Circuits are those
    of M1, those of M2, and (C1 u C2) - p for circuits C1, C2 through p.
    """
    if base2 is None:
        base2 = base1
    if base1 in m1.loops() or base2 in m2.loops():
        raise ValueError("basepoint of a parallel connection must not be a loop")
    lab = parallel_connection_labels(m1.n, m2.n, base1, base2)
    c2 = [tuple(sorted(lab[m1.n + j - 1] for j in c)) for c in m2.circuits]
    cs = list(m1.circuits) + c2
    through1 = [set(c) - {base1} for c in m1.circuits if base1 in c]
    through2 = [set(c) - {base1} for c in c2 if base1 in c]
    for a in through1:
        for b in through2:
            cs.append(tuple(sorted(a | b)))
    real = m1.realizable and m2.realizable
    return Matroid(m1.n + m2.n - 1, cs, validate=True, realizable=real or None)


def _to_fraction_rows(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in r] for r in rows]
