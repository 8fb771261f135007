"""Cohomology of the complexes (A, .v) and (A-bar, .v), and resonance tests.

Right multiplication by v = sum v_i e_i is assembled from precomputed
per-generator integer matrices, so a profile costs one tensor contraction and
a handful of exact ranks per degree.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .errors import FieldMismatch, TorusViolation
from .fields import FieldSpec, Q, integer_row
from .matroid import Matroid, parallel_connection, parallel_connection_labels
from .osalgebra import OSAlgebra, build_os, poly_mul
from .subspace import Subspace

# exhaustive enumeration of W(F_p) is used when it has at most this many points
ENUMERATION_CAP = 1 << 14
WITNESS_ATTEMPTS = 64


@dataclass(frozen=True)
class ResonancePoint:
    coords: tuple
    field: FieldSpec = Q

    @classmethod
    def make(cls, v: Sequence, fld: FieldSpec = Q) -> ResonancePoint:
        return cls(tuple(fld.vector(v)), fld)

    def __len__(self):
        return len(self.coords)

    def in_vbar(self) -> bool:
        return self.field.coerce(sum(self.coords)) == 0

    def flat_sum(self, elements) -> object:
        """v(X), the sum of the coordinates indexed by X."""
        return self.field.coerce(sum(self.coords[i - 1] for i in elements))

    def on_torus(self) -> bool:
        return all(x != 0 for x in self.coords)

    def integers(self) -> list[int]:
        """An integer vector defining the same multiplication map up to a unit."""
        if self.field.is_rational:
            return integer_row(self.coords)
        return [int(x) for x in self.coords]


def as_point(v, fld: FieldSpec) -> ResonancePoint:
    if isinstance(v, ResonancePoint):
        fld.check_same(v.field)
        return v
    return ResonancePoint.make(v, fld)


@dataclass(frozen=True)
class CohomologyProfile:
    dims: tuple[int, ...]
    point: ResonancePoint
    projective: tuple[int, ...] | None = None

    def __getitem__(self, p: int) -> int:
        return self.dims[p] if 0 <= p < len(self.dims) else 0

    def projective_at(self, p: int) -> int:
        if self.projective is None:
            raise ValueError("profile was computed without the projective complex")
        return self.projective[p] if 0 <= p < len(self.projective) else 0

    def projective_euler(self) -> int:
        return sum((-1) ** p * d for p, d in enumerate(self.projective or ()))

    def to_json(self) -> dict:
        out = {"dims": list(self.dims)}
        if self.projective is not None:
            out["projective"] = list(self.projective)
        return out


def _check_point(m: Matroid, pt: ResonancePoint):
    if len(pt) != m.n:
        raise ValueError(f"point has {len(pt)} coordinates, matroid has {m.n} elements")


def _mod(a: np.ndarray, fld: FieldSpec) -> np.ndarray:
    return a if fld.is_rational else a % fld.p


def multiplication_ranks(alg: OSAlgebra, vint: Sequence[int], fld: FieldSpec) -> list[int]:
    """Ranks of a -> a v on A^p for p = 0..rank (the last one is 0)."""
    out = []
    for p in range(alg.rank + 1):
        mat = alg.right_mult_matrix(vint, p)
        out.append(linalg.rank(_mod(mat, fld), fld) if mat.size else 0)
    return out


def projective_ranks(alg: OSAlgebra, vint: Sequence[int], fld: FieldSpec) -> list[int]:
    out = []
    for p in range(alg.rank + 1):
        ker = alg.projective_kernel(p, fld)
        mat = alg.right_mult_matrix(vint, p)
        if ker.shape[0] == 0 or mat.size == 0:
            out.append(0)
            continue
        out.append(linalg.rank(_mod(ker.dot(mat), fld), fld))
    return out


def _dims_from_ranks(dims: Sequence[int], ranks: Sequence[int]) -> tuple[int, ...]:
    return tuple(d - ranks[p] - (ranks[p - 1] if p else 0) for p, d in enumerate(dims))


def cohomology_profile(m: Matroid, fld: FieldSpec, v, projective: bool = False) -> CohomologyProfile:
    """dim H^p(A(M), .v) for p = 0..rank, optionally also for A-bar (v in V-bar)."""
    pt = as_point(v, fld)
    _check_point(m, pt)
    alg = build_os(m)
    vint = pt.integers()
    dims = _dims_from_ranks(alg.dims(), multiplication_ranks(alg, vint, fld))
    proj = None
    if projective:
        if not pt.in_vbar():
            raise ValueError("the projective complex is only a complex for v with coordinate sum 0")
        proj = _dims_from_ranks(alg.projective_dims(fld), projective_ranks(alg, vint, fld))
    return CohomologyProfile(dims, pt, proj)


def cohomology_dim(m: Matroid, fld: FieldSpec, v, p: int, projective: bool = False) -> int:
    prof = cohomology_profile(m, fld, v, projective)
    return prof.projective_at(p) if projective else prof[p]


def in_resonance(m: Matroid, fld: FieldSpec, v, p: int, d: int = 1) -> bool:
    if not 0 <= p <= m.rank():
        raise ValueError(f"degree {p} outside 0..{m.rank()}")
    return cohomology_profile(m, fld, v)[p] >= d


# -- containment of subspaces ------------------------------------------------

@dataclass
class Verdict:
    status: str  # contained | not_contained | inconclusive
    exact: bool
    mode: str
    degree: int
    depth: int
    witness: tuple | None = None
    witness_dim: int | None = None
    failure_bound: Fraction | None = None
    trials: int | None = None
    seed: int | None = None
    generic_dim: int | None = None
    evaluations: int = 0
    notes: list = dc_field(default_factory=list)

    @property
    def contained(self) -> bool:
        return self.status == "contained"

    def to_json(self, fld: FieldSpec) -> dict:
        out = {"status": self.status, "exact": self.exact, "mode": self.mode,
               "degree": self.degree, "depth": self.depth, "evaluations": self.evaluations}
        if self.witness is not None:
            out["witness"] = [fld.to_json(x) for x in self.witness]
            out["witness_dim"] = self.witness_dim
        if self.failure_bound is not None:
            fb = self.failure_bound
            out["failure_bound"] = f"{fb.numerator}/{fb.denominator}" if fb.denominator != 1 else str(fb.numerator)
        if self.generic_dim is not None:
            out["generic_dim"] = self.generic_dim
        if self.trials is not None:
            out["trials"] = self.trials
        if self.seed is not None:
            out["seed"] = self.seed
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _degree_dim(alg: OSAlgebra, p: int, fld: FieldSpec, projective: bool) -> int:
    if projective:
        return alg.projective_dims(fld)[p] if 0 <= p <= alg.rank else 0
    return alg.dim(p)


def _point_ranks(alg, fld, vint, projective) -> list[int]:
    return projective_ranks(alg, vint, fld) if projective else multiplication_ranks(alg, vint, fld)


def _dim_at(alg, fld, ranks, p, projective) -> int:
    prev = ranks[p - 1] if p >= 1 else 0
    cur = ranks[p] if p <= alg.rank else 0
    return _degree_dim(alg, p, fld, projective) - cur - prev


def _point_dim(alg, fld, vint, p, projective) -> int:
    return _dim_at(alg, fld, _point_ranks(alg, fld, vint, projective), p, projective)


def complex_bound_dim(alg: OSAlgebra, fld: FieldSpec, sampled: Sequence[Sequence[int]], p: int,
                      projective: bool = False) -> int:
    """A lower bound for dim H^p at a generic point of W, from ranks sampled on W.

    The generic rank r_q of the differential out of degree q is at least every
    sampled rank, and (A, .v) being a complex gives r_q <= dim C^q - r_(q-1)
    and r_q <= dim C^(q+1) - r_(q+1) at every point. Lower bounds on the
    neighbours therefore cap r_q, and dim C^p minus the caps on r_p, r_(p-1)
    bounds the generic cohomology from below.
    """
    top = alg.rank
    dims = [_degree_dim(alg, q, fld, projective) for q in range(top + 1)] + [0]
    low = [max(r[q] for r in sampled) for q in range(top + 1)]

    def cap(q):
        if q < 0 or q > top:
            return 0
        c = min(dims[q], dims[q + 1])
        c = min(c, dims[q] - (low[q - 1] if q else 0))
        if q + 1 <= top:
            c = min(c, dims[q + 1] - low[q + 1])
        return c

    return dims[p] - cap(p) - cap(p - 1)


def _pencil(alg: OSAlgebra, basis_ints: list[list[int]], q: int, fld: FieldSpec, projective: bool):
    if q < 0 or q >= alg.rank:
        return None
    mats = []
    for w in basis_ints:
        mat = alg.right_mult_matrix(w, q)
        if projective:
            ker = alg.projective_kernel(q, fld)
            mat = ker.dot(mat) if ker.shape[0] and mat.size else np.zeros((ker.shape[0], mat.shape[1]), dtype=object)
        mats.append(_mod(mat, fld))
    if mats[0].size == 0:
        return None
    return mats


def generic_dim(m: Matroid, fld: FieldSpec, w: Subspace, p: int, projective: bool = False,
                seed: int = 0) -> tuple[int, int]:
    """Exact dim H^p at a generic point of W, and the number of evaluations used."""
    alg = build_os(m)
    basis_ints = [integer_row(r) if fld.is_rational else [int(x) for x in r] for r in w.basis]
    total = 0
    ranks = []
    for q in (p, p - 1):
        mats = _pencil(alg, basis_ints, q, fld, projective)
        if mats is None:
            ranks.append(0)
            continue
        r, ev = linalg.generic_rank(mats, fld, seed=seed)
        ranks.append(r)
        total += ev
    return _degree_dim(alg, p, fld, projective) - ranks[0] - ranks[1], total


def _failure_bound(alg: OSAlgebra, p: int, fld: FieldSpec, trials: int, box: int, projective: bool) -> Fraction:
    def side(q):
        if q < 0 or q >= alg.rank:
            return 0
        rows = _degree_dim(alg, q, fld, projective)
        return min(rows, alg.dim(q + 1))

    degree = side(p) + side(p - 1)
    sample_size = 2 * box + 1 if fld.is_rational else fld.p
    per_trial = min(Fraction(1), Fraction(degree, sample_size))
    return per_trial ** trials


def _complex_certificate(alg, fld, w, sampled, points, p, projective) -> int:
    """Best lower bound for dim H^p on all of W from the complex bounds.

    On V-bar the complex (A, .v) is (A-bar, .v) plus a shifted copy
    e_1 (A-bar, .v), in every characteristic, so the bound for A-bar (whose
    top differential vanishes) can be sharper than the direct one.
    """
    best = complex_bound_dim(alg, fld, sampled, p, projective)
    if not projective and w.in_vbar():
        proj = [projective_ranks(alg, v, fld) for v in points]
        split = complex_bound_dim(alg, fld, proj, p, True)
        if p >= 1:
            split += complex_bound_dim(alg, fld, proj, p - 1, True)
        best = max(best, split)
    return best


def subspace_in_resonance(m: Matroid, fld: FieldSpec, w: Subspace, p: int, d: int = 1, *,
                          mode: str = "probabilistic", trials: int = 8, seed: int = 0,
                          box: int = 10**4, projective: bool = False) -> Verdict:
    """Decide whether every point of W lies in R^p_d.

    Probabilistic mode samples ``trials`` points; a point outside is an exact
    witness, while all points inside gives a verdict whose failure
    probability is at most the reported bound. Symbolic mode computes the
    generic rank exactly (see ``linalg.generic_rank``); over a small prime
    field the points of W are enumerated instead.
    """
    if mode not in ("probabilistic", "symbolic"):
        raise ValueError(f"unknown mode {mode!r}")
    if w.field != fld:
        raise FieldMismatch(f"subspace over {w.field}, computation over {fld}")
    if w.ambient != m.n:
        raise ValueError("subspace ambient dimension differs from the ground set size")
    if not 0 <= p <= m.rank():
        raise ValueError(f"degree {p} outside 0..{m.rank()}")
    if not w.in_vbar():
        warnings.warn("subspace is not inside V-bar, where all resonance lives", stacklevel=2)
    alg = build_os(m)
    verdict = Verdict("inconclusive", False, mode, p, d, seed=seed)

    sampled: list[list[int]] = []
    sampled_points: list[list[int]] = []

    def check(vec) -> tuple[bool, int]:
        pt = ResonancePoint.make(vec, fld)
        ranks = _point_ranks(alg, fld, pt.integers(), projective)
        sampled.append(ranks)
        sampled_points.append(pt.integers())
        dim = _dim_at(alg, fld, ranks, p, projective)
        return dim >= d, dim

    if w.dim == 0:
        ok, dim = check([0] * m.n)
        verdict.status = "contained" if ok else "not_contained"
        verdict.exact = True
        verdict.evaluations = 1
        if not ok:
            verdict.witness, verdict.witness_dim = tuple([fld.zero()] * m.n), dim
        return verdict

    rng = random.Random(seed)
    if mode == "probabilistic":
        verdict.trials = trials
        for t in range(trials):
            vec = w.sample(rng, box)
            ok, dim = check(vec)
            verdict.evaluations += 1
            if not ok:
                verdict.status, verdict.exact = "not_contained", True
                verdict.witness, verdict.witness_dim = tuple(vec), dim
                return verdict
        verdict.status = "contained"
        verdict.failure_bound = _failure_bound(alg, p, fld, trials, box, projective)
        return verdict

    # symbolic: a sampled point outside is already an exact witness, so try a few first
    for _ in range(trials):
        vec = w.sample(rng, box)
        ok, dim = check(vec)
        verdict.evaluations += 1
        if not ok:
            verdict.status, verdict.exact = "not_contained", True
            verdict.witness, verdict.witness_dim = tuple(vec), dim
            return verdict
    if sampled and _complex_certificate(alg, fld, w, sampled, sampled_points, p, projective) >= d:
        verdict.notes.append("generic ranks pinned by the complex bound on sampled ranks")
        verdict.status, verdict.exact = "contained", True
        return verdict
    if not fld.is_rational and fld.p ** w.dim <= ENUMERATION_CAP:
        verdict.notes.append(f"enumerated all {fld.p ** w.dim} points of W")
        for params in itertools.product(range(fld.p), repeat=w.dim):
            vec = w.point(params)
            ok, dim = check(vec)
            verdict.evaluations += 1
            if not ok:
                verdict.status, verdict.exact = "not_contained", True
                verdict.witness, verdict.witness_dim = tuple(vec), dim
                return verdict
        verdict.status, verdict.exact = "contained", True
        return verdict
    try:
        gdim, evals = generic_dim(m, fld, w, p, projective, seed=seed)
    except ValueError as exc:
        verdict.notes.append(str(exc))
        return verdict
    verdict.generic_dim = gdim
    verdict.evaluations += evals
    if gdim >= d:
        verdict.status, verdict.exact = "contained", True
        return verdict
    for _ in range(WITNESS_ATTEMPTS):
        vec = w.sample(rng, box)
        ok, dim = check(vec)
        verdict.evaluations += 1
        if not ok:
            verdict.status, verdict.exact = "not_contained", True
            verdict.witness, verdict.witness_dim = tuple(vec), dim
            return verdict
    # generic rank says a witness exists; report the exact verdict without one
    verdict.status, verdict.exact = "not_contained", True
    verdict.notes.append("no explicit witness found within the attempt budget")
    return verdict


# -- structural identities at points -----------------------------------------

@dataclass(frozen=True)
class CheckResult:
    status: str  # pass | fail | skipped
    detail: dict

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def scaling_invariance_check(m: Matroid, fld: FieldSpec, v, lam) -> bool:
    lam = fld.coerce(lam)
    if lam == 0:
        raise ValueError("scaling factor must be nonzero")
    pt = as_point(v, fld)
    scaled = [fld.mul(lam, x) for x in pt.coords]
    return cohomology_profile(m, fld, pt).dims == cohomology_profile(m, fld, scaled).dims


def propagation_check(m: Matroid, fld: FieldSpec, v) -> bool:
    """Pointwise propagation: H^p(A, v) != 0 forces H^(p+1)(A, v) != 0 for p < rank."""
    pt = as_point(v, fld)
    if not pt.in_vbar():
        raise ValueError("propagation is stated for v in V-bar")
    dims = cohomology_profile(m, fld, pt).dims
    return all(dims[p + 1] >= 1 for p in range(len(dims) - 1) if dims[p] >= 1)


def decone_check(m: Matroid, fld: FieldSpec, v, p: int | None = None) -> CheckResult:
    """dim H^p(A) = dim H^p(A-bar) + dim H^(p-1)(A-bar) at v in V-bar.

    Skipped when the characteristic divides n.
    """
    if fld.divides_characteristic(m.n):
        return CheckResult("skipped", {"reason": "CharDividesN", "n": m.n, "char": fld.char})
    pt = as_point(v, fld)
    prof = cohomology_profile(m, fld, pt, projective=True)
    degrees = range(len(prof.dims)) if p is None else [p]
    bad = [q for q in degrees if prof[q] != prof.projective_at(q) + prof.projective_at(q - 1)]
    return CheckResult("fail" if bad else "pass",
                       {"dims": list(prof.dims), "projective": list(prof.projective), "failed_degrees": bad})


def duality_torus_check(m: Matroid, fld: FieldSpec, v, p: int) -> bool:
    """R^(l-p)(M) and R^(n-l-p)(M dual) agree at a torus point."""
    pt = as_point(v, fld)
    if not pt.on_torus():
        raise TorusViolation("duality of resonance is only asserted on the torus (all v_i != 0)")
    rk = m.rank()
    dual = m.dual()
    left = cohomology_profile(m, fld, pt)[rk - p] >= 1
    right = cohomology_profile(dual, fld, pt)[m.n - rk - p] >= 1
    return left == right


@dataclass(frozen=True)
class MinorInclusion:
    dims: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    inequalities: tuple[bool, bool, bool]
    inclusions: tuple[bool, bool, bool]

    @property
    def ok(self) -> bool:
        return all(self.inequalities) and all(self.inclusions)


def minor_inclusion_check(m: Matroid, i0: int, fld: FieldSpec, v, p: int, j: int = 0,
                          depth: int = 1) -> MinorInclusion:
    """The three deletion-contraction inclusions at a point v with v_{i0} = 0.

    With h, h', h'' the cohomology dimensions of M, M - i0 and M / i0, the
    long exact sequence gives
        h^p <= h'^p + h''^(p-1),  h''^(p-1) <= h^p + h'^(p+1),  h'^p <= h''^(p-2) + h^p,
    and each depth-indexed inclusion (for depth >= j >= 0) is checked as the
    implication it encodes.
    """
    if not depth >= j >= 0:
        raise ValueError("need depth >= j >= 0")
    if i0 in m.loops():
        raise ValueError(f"element {i0} is a loop")
    pt = as_point(v, fld)
    _check_point(m, pt)
    if pt.coords[i0 - 1] != 0:
        raise ValueError(f"v must vanish at coordinate {i0}")
    rest = [x for i, x in enumerate(pt.coords, 1) if i != i0]
    h = cohomology_profile(m, fld, pt)
    hd = cohomology_profile(m.delete([i0]), fld, rest)
    hc = cohomology_profile(m.contract([i0]), fld, rest)
    ineq = (
        h[p] <= hd[p] + hc[p - 1],
        hc[p - 1] <= h[p] + hd[p + 1],
        hd[p] <= hc[p - 2] + h[p],
    )
    k = depth
    incl = (
        not (h[p] >= k and hd[p] < j + 1) or hc[p - 1] >= k - j,
        not (hc[p - 1] >= k and h[p] < j + 1) or hd[p + 1] >= k - j,
        not (hd[p] >= k and hc[p - 2] < j + 1) or h[p] >= k - j,
    )
    return MinorInclusion((h.dims, hd.dims, hc.dims), ineq, incl)


def parallel_point(n1: int, n2: int, base1: int, base2: int, v1: Sequence, v2: Sequence, fld: FieldSpec) -> list:
    """The map from V(M1) + V(M2) to V(M1 o M2); the basepoint gets v1_p + v2_p."""
    lab = parallel_connection_labels(n1, n2, base1, base2)
    out = [fld.zero()] * (n1 + n2 - 1)
    for k, x in enumerate(list(fld.vector(v1)) + list(fld.vector(v2))):
        out[lab[k] - 1] = fld.add(out[lab[k] - 1], x)
    return out


def kunneth_dims(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return poly_mul(list(a), list(b))


def parallel_connection_check(m1: Matroid, m2: Matroid, base1: int, fld: FieldSpec, v1, v2,
                              p: int | None = None, base2: int | None = None) -> bool:
    """(v1, v2) in R^p(M1 + M2) iff its image lies in R^p(M1 o M2).

    With ``p`` None every degree up to the rank of the parallel connection is checked.
    """
    base2 = base1 if base2 is None else base2
    p1, p2 = as_point(v1, fld), as_point(v2, fld)
    if not (p1.in_vbar() and p2.in_vbar()):
        raise ValueError("both points must have coordinate sum 0")
    pc = parallel_connection(m1, m2, base1, base2)
    degrees = range(pc.rank() + 1) if p is None else [p]
    if not all(0 <= q <= pc.rank() for q in degrees):
        raise ValueError(f"degree {p} outside 0..{pc.rank()}")
    sum_dims = kunneth_dims(cohomology_profile(m1, fld, p1).dims, cohomology_profile(m2, fld, p2).dims)
    w = parallel_point(m1.n, m2.n, base1, base2, p1.coords, p2.coords, fld)
    pc_dims = cohomology_profile(pc, fld, w)
    for q in degrees:
        in_sum = q < len(sum_dims) and sum_dims[q] >= 1
        if in_sum != (pc_dims[q] >= 1):
            return False
    return True


def hilbert_identity_check(m1: Matroid, m2: Matroid, base1: int, base2: int | None = None) -> bool:
    """h(A(M1 o M2)) * h(A(M12)) = h(A(M1)) * h(A(M2)) with M12 the one-element flat."""
    base2 = base1 if base2 is None else base2
    pc = parallel_connection(m1, m2, base1, base2)
    left = poly_mul(build_os(pc).dims(), [1, 1])
    right = poly_mul(build_os(m1).dims(), build_os(m2).dims())
    return left == right
