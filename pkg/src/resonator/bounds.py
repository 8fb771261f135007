"""Partition subspaces, cover subspaces and the Bound^p arrangements."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .errors import CoverLimitReached, NotACover
from .fields import FieldSpec, Q
from .matroid import Flat, Matroid, Partition
from .resonance import Verdict, as_point, subspace_in_resonance
from .subspace import Subspace

DEFAULT_COVER_CAP = 10**6


def _indicator(block: Iterable[int], n: int) -> list[int]:
    row = [0] * n
    for i in block:
        row[i - 1] = 1
    return row


def p_subspace(partition: Partition, fld: FieldSpec = Q) -> Subspace:
    """{x : the coordinates of x sum to zero on every block}."""
    n = partition.n
    return Subspace.from_equations([_indicator(b, n) for b in partition], n, fld)


def q_subspace(partition: Partition, fld: FieldSpec = Q) -> Subspace:
    """Span of the block indicator vectors."""
    n = partition.n
    return Subspace.span([_indicator(b, n) for b in partition], n, fld)


@dataclass(frozen=True)
class Cover:
    flats: tuple[tuple[int, ...], ...]
    witness: tuple[int, ...]  # witness[i-1] = index into flats of a flat containing i
    essential: bool

    @classmethod
    def make(cls, flats: Iterable[Iterable[int]], n: int) -> Cover:
        fl = tuple(sorted({tuple(sorted(x)) for x in flats}))
        wit: list[int | None] = [None] * n
        for i in range(1, n + 1):
            if not any(i in x for x in fl):
                raise NotACover(f"element {i} lies in none of the flats")
        # surjectivity needs distinct representatives: one private element per flat
        owner: dict[int, int] = {}

        def augment(k: int, seen: set) -> bool:
            for i in fl[k]:
                if i in seen:
                    continue
                seen.add(i)
                if i not in owner or augment(owner[i], seen):
                    owner[i] = k
                    return True
            return False

        for k in range(len(fl)):
            if not augment(k, set()):
                raise NotACover(f"flat {fl[k]} gets no element under any surjective witness")
        for i in range(1, n + 1):
            wit[i - 1] = owner.get(i, next(k for k, x in enumerate(fl) if i in x))
        return cls(fl, tuple(wit), all(len(x) > 1 for x in fl))


def cover_subspace(m: Matroid, flats: Iterable[Iterable[int]], fld: FieldSpec = Q) -> Subspace:
    """P_Co: v in V-bar with v(X) = 0 for every X in the cover."""
    flats = [tuple(sorted(x)) for x in flats]
    for x in flats:
        if not m.is_flat(x):
            raise ValueError(f"{x} is not a flat")
    covered = set().union(*flats) if flats else set()
    if covered != set(range(1, m.n + 1)):
        raise NotACover(f"elements {sorted(set(range(1, m.n + 1)) - covered)} are not covered")
    eqs = [[1] * m.n] + [_indicator(x, m.n) for x in flats]
    return Subspace.from_equations(eqs, m.n, fld)


@dataclass
class Arrangement:
    """Maximal subspaces of a bound, ordered by their RREF."""

    ambient: int
    degree: int
    essential: bool
    components: list[Subspace]
    covers: list[tuple[tuple[int, ...], ...]] = dc_field(default_factory=list)
    truncated: bool = False
    leaves: int = 0

    def contains_vector(self, v) -> bool:
        return any(c.contains_vector(v) for c in self.components)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "essential": self.essential,
            "truncated": self.truncated,
            "components": [{"dim": c.dim, "basis": c.to_json(), "cover": [list(x) for x in cov]}
                           for c, cov in zip(self.components, self.covers)],
        }


def _contained(inner_basis: list, outer_eqs: list, fld: FieldSpec) -> bool:
    for row in inner_basis:
        for eq in outer_eqs:
            s = fld.zero()
            for a, b in zip(row, eq):
                if a and b:
                    s = fld.add(s, fld.mul(a, b))
            if s != 0:
                return False
    return True


def bound(m: Matroid, p: int, essential: bool = False, fld: FieldSpec = Q,
          cap: int = DEFAULT_COVER_CAP, strict: bool = False) -> Arrangement:
    """Maximal P_Co over covers Co by irreducible flats of rank <= p+1.

    The search always extends the cover at its least uncovered element, which
    reaches a sub-cover of every cover (and sub-covers only enlarge P_Co).
    Branches whose partial subspace already sits inside a found component are
    cut. With ``strict`` the cover cap raises instead of truncating.
    """
    if not 0 <= p <= m.rank():
        raise ValueError(f"degree {p} outside 0..{m.rank()}")
    n = m.n
    flats = [f for f in m.irreducible_flats(min(p + 1, m.rank()))
             if not essential or len(f) > 1]
    # big flats first: their P_Co are large and prune the rest of the search early
    flats.sort(key=lambda f: (-len(f), f.elements))
    by_elem: dict[int, list[Flat]] = {i: [f for f in flats if i in f] for i in range(1, n + 1)}
    found: list[tuple[Subspace, list, tuple]] = []  # (subspace, equations, cover)
    state = {"leaves": 0, "truncated": False}
    full = (1 << n) - 1

    def subspace_of(eqs):
        return Subspace.from_equations(eqs, n, fld)

    def dfs(covered: int, chosen: list, eqs: list):
        if state["truncated"]:
            return
        sub = subspace_of(eqs)
        basis = [list(r) for r in sub.basis]
        for _, ceqs, _ in found:
            if _contained(basis, ceqs, fld):
                return
        if covered == full:
            state["leaves"] += 1
            if state["leaves"] > cap:
                state["truncated"] = True
                return
            found[:] = [t for t in found if not _contained([list(r) for r in t[0].basis], eqs_of(sub), fld)]
            found.append((sub, eqs_of(sub), tuple(sorted(f.elements for f in chosen))))
            return
        e = (~covered & full & -(~covered & full)).bit_length()
        for f in by_elem[e]:
            dfs(covered | f.mask, chosen + [f], eqs + [_indicator(f.elements, n)])

    def eqs_of(sub: Subspace) -> list:
        return sub.equations()

    dfs(0, [], [[1] * n])
    if state["truncated"] and strict:
        raise CoverLimitReached(f"more than {cap} covers")
    found.sort(key=lambda t: t[0].sort_key())
    return Arrangement(n, p, essential, [t[0] for t in found], [t[2] for t in found],
                       state["truncated"], state["leaves"])


def sv_bound_membership(m: Matroid, v, p: int, fld: FieldSpec = Q) -> bool:
    """Some irreducible flat X of rank <= p+1 has v(X) = 0."""
    pt = as_point(v, fld)
    if not pt.in_vbar():
        raise ValueError("the flat-sum bound is stated for v with coordinate sum 0")
    top = min(p + 1, m.rank())
    return any(pt.flat_sum(f.elements) == 0 for f in m.irreducible_flats(top))


@dataclass
class BoundComparison:
    arrangement: Arrangement
    verdicts: list[Verdict]
    realizable: bool | None

    @property
    def tight(self) -> bool:
        return all(v.status == "contained" for v in self.verdicts)

    def gaps(self) -> list[int]:
        return [k for k, v in enumerate(self.verdicts) if v.status == "not_contained"]

    def to_json(self, fld: FieldSpec) -> dict:
        arr = self.arrangement.to_json()
        for comp, v in zip(arr["components"], self.verdicts):
            comp["verdict"] = v.to_json(fld)
        arr["tight"] = self.tight
        arr["realizable"] = self.realizable
        return arr


def compare_bound(m: Matroid, fld: FieldSpec, p: int, *, mode: str = "probabilistic", trials: int = 8,
                  seed: int = 0, essential: bool = False, cap: int = DEFAULT_COVER_CAP) -> BoundComparison:
    """Test every maximal component of Bound^p for containment in R^p."""
    arr = bound(m, p, essential, fld, cap)
    verdicts = [subspace_in_resonance(m, fld, comp, p, 1, mode=mode, trials=trials, seed=seed)
                for comp in arr.components]
    return BoundComparison(arr, verdicts, m.realizable)
