"""Regression corpus: the worked examples and the randomized property suites.

Each case is a function of a ``Context`` (seed plus a way to look up named
matroids, which the CLI can override) returning a JSON-ready dict with an
``ok`` flag. Cases are independent, so they may run in a process pool;
results are always reported in case order.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import catalog
from .bounds import compare_bound, cover_subspace, p_subspace
from .fields import FieldSpec, Q
from .matroid import Matroid, from_graph, uniform
from .multinet import (multinet_component, multinet_section, resonance_component,
                       search_multinets, simplified_component, verify_multinet)
from .resonance import (cohomology_profile, decone_check, duality_torus_check, minor_inclusion_check,
                        parallel_connection_check, hilbert_identity_check, propagation_check,
                        subspace_in_resonance)
from .singular import singular_rank, split_signs, truncated_factorization
from .specio import build
from .subspace import Subspace

DEFAULT_SEED = 20240601
F2, F3, F5 = FieldSpec.prime(2), FieldSpec.prime(3), FieldSpec.prime(5)
FUZZ_FIELDS = (Q, F2, F3, F5)


@dataclass
class Context:
    seed: int = DEFAULT_SEED
    overrides: dict = field(default_factory=dict)  # name -> canonical spec

    def matroid(self, name: str) -> Matroid:
        if name in self.overrides:
            return build(self.overrides[name])
        return catalog.get(name)

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


def _vbar_outside(rng: random.Random, n: int, avoid: Subspace, fld: FieldSpec, box: int = 50) -> list:
    while True:
        v = [rng.randint(-box, box) for _ in range(n - 1)]
        v.append(-sum(v))
        if not avoid.contains_vector(v):
            return fld.vector(v)


def _verdict(v, fld=Q) -> dict:
    return v.to_json(fld)


# -- worked examples -----------------------------------------------------------

def case_fat_triangle(ctx: Context) -> dict:
    m = ctx.matroid("fat-triangle")
    rng = ctx.rng("fat-triangle")
    part = p_subspace(catalog.FAT_TRIANGLE_R0)
    inside = [cohomology_profile(m, Q, part.sample(rng, 100))[0] for _ in range(32)]
    symbolic = subspace_in_resonance(m, Q, part, 0, mode="symbolic", seed=ctx.seed)
    outside = [cohomology_profile(m, Q, _vbar_outside(rng, m.n, part, Q))[0] for _ in range(32)]
    ok = part.dim == 3 and min(inside) >= 1 and symbolic.contained and max(outside) == 0
    return {"ok": ok, "dim": part.dim, "inside_h0_min": min(inside), "outside_h0_max": max(outside),
            "symbolic": _verdict(symbolic)}


def case_uniform(ctx: Context) -> dict:
    rng = ctx.rng("uniform")
    rows = []
    ok = True
    for rank, n in ((2, 4), (2, 5), (3, 5), (3, 6)):
        m = uniform(rank, n)
        low, top = [], []
        for _ in range(16):
            v = [rng.randint(-20, 20) for _ in range(n - 1)]
            v.append(-sum(v))
            if not any(v):
                continue
            prof = cohomology_profile(m, Q, v)
            low.append(max((prof[p] for p in range(rank - 1)), default=0))
            top.append(prof[rank - 1])
        good = max(low) == 0 and min(top) >= 1
        ok &= good
        rows.append({"rank": rank, "n": n, "ok": good, "low_max": max(low), "top_min": min(top)})
    return {"ok": ok, "matroids": rows}


def case_x_graph(ctx: Context) -> dict:
    m = ctx.matroid("x-graph")
    want = sorted((p_subspace(part) for part in catalog.X_GRAPH_R2), key=Subspace.sort_key)
    cmp = compare_bound(m, Q, 2, mode="symbolic", seed=ctx.seed)
    got = cmp.arrangement.components
    ok = got == want and cmp.tight
    return {"ok": ok, "components": len(got), "matches": got == want, "tight": cmp.tight,
            "verdicts": [v.status for v in cmp.verdicts]}


def case_char2(ctx: Context) -> dict:
    m = ctx.matroid("x-graph")
    ones = [1] * m.n
    over_f2 = cohomology_profile(m, F2, ones)[2]
    over_q = cohomology_profile(m, Q, ones)[2]
    return {"ok": over_f2 >= 1 and over_q == 0, "h2_f2": over_f2, "h2_q": over_q}


def case_delres(ctx: Context) -> dict:
    out = {}
    ok = True
    for name, expect in (("k5-7", "contained"), ("k5-9", "contained"), ("k5", "not_contained")):
        m = ctx.matroid(name)
        v = subspace_in_resonance(m, Q, catalog.delres_subspace(m.n), 2, mode="symbolic", seed=ctx.seed)
        good = v.status == expect and v.exact and (expect == "contained" or v.witness is not None)
        ok &= good
        out[name] = _verdict(v)
    return {"ok": ok, "verdicts": out}


def case_pyramid(ctx: Context) -> dict:
    m = ctx.matroid("pyramid")
    w = catalog.pyramid_singular()
    sw = w.permute(catalog.PYRAMID_SIGMA)
    rep, srep = singular_rank(m, Q, w), singular_rank(m, Q, sw)
    phi = truncated_factorization(m, Q, w, 2, catalog.pyramid_phi_basis())
    signs = split_signs(phi, catalog.pyramid_labeling())
    wide = cover_subspace(m, catalog.PYRAMID_COVER_WIDE)
    v_w = subspace_in_resonance(m, Q, w, 2, mode="symbolic", seed=ctx.seed)
    v_sw = subspace_in_resonance(m, Q, sw, 2, mode="symbolic", seed=ctx.seed)
    v_wide = subspace_in_resonance(m, Q, wide, 2, mode="symbolic", seed=ctx.seed)
    graded = signs == [(-1) ** p for p in range(len(signs))]
    ok = (rep.dim, rep.rank, rep.is_singular) == (3, 2, True) and (srep.rank, srep.is_singular) == (3, False)
    ok &= phi.injective_degree1 and graded and signs[1] == -1
    ok &= v_w.contained and v_sw.contained and v_wide.status == "not_contained" and v_wide.witness is not None
    ok &= sw == catalog.pyramid_cover_space() == cover_subspace(m, catalog.PYRAMID_COVER)
    return {"ok": ok, "singular": rep.to_json(), "sigma_singular": srep.to_json(), "split_signs": signs,
            "W": _verdict(v_w), "sigma_W": _verdict(v_sw), "wide_cover": _verdict(v_wide)}


def case_pyramid_deletion(ctx: Context) -> dict:
    m = ctx.matroid("pyramid")
    printed = subspace_in_resonance(m, Q, catalog.pyramid_minus_3_printed(), 2, mode="symbolic", seed=ctx.seed)
    swapped = subspace_in_resonance(m, Q, catalog.pyramid_minus_3_swapped(), 2, mode="symbolic", seed=ctx.seed)
    ok = printed.status == "not_contained" and swapped.contained
    return {"ok": ok, "printed": _verdict(printed), "swapped": _verdict(swapped)}


def case_b3(ctx: Context) -> dict:
    m = ctx.matroid("b3-doubled")
    rng = ctx.rng("b3")
    blocks = catalog.B3_MULTINET
    flats = [f.elements for f in m.irreducible_flats(2, 2)]
    verdict = verify_multinet(m, blocks, flats)
    comp = multinet_component(blocks)
    h1 = [cohomology_profile(m, Q, comp.sample(rng, 100))[1] for _ in range(16)]
    cover = cover_subspace(m, flats)
    simple, pushed = simplified_component(m, blocks)
    simple_cover = cover_subspace(simple, [f.elements for f in simple.irreducible_flats(2, 2)])
    section = multinet_section(m, blocks, Q, seed=ctx.seed)
    found = [mn.to_json() for mn in search_multinets(m)]
    ok = verdict.valid and comp.dim == 2 and min(h1) >= 1
    ok &= cover == resonance_component(m, blocks) and simple_cover == pushed
    ok &= section.split and section.ring_map and all(section.h1_injective)
    ok &= any(mn["blocks"] == [list(b) for b in blocks] for mn in found)
    return {"ok": ok, "axioms": verdict.axioms, "component_dim": comp.dim, "h1_min": min(h1),
            "cover_dim": cover.dim, "simple_cover_dim": simple_cover.dim,
            "cover_equals_component": cover == resonance_component(m, blocks),
            "simple_cover_equals_component": simple_cover == pushed, "multinets": found}


REFERENCE_CASES: dict[str, Callable[[Context], dict]] = {
    "fat-triangle-r0": case_fat_triangle,
    "uniform-vanishing": case_uniform,
    "x-graph-bound": case_x_graph,
    "char2-membership": case_char2,
    "delres-chain": case_delres,
    "pyramid-singular": case_pyramid,
    "pyramid-deletion-component": case_pyramid_deletion,
    "b3-multinet": case_b3,
}


# -- fuzz ------------------------------------------------------------------------

def random_graphic(rng: random.Random) -> Matroid:
    verts = rng.randint(3, 5)
    n = rng.randint(verts, 8)
    edges = []
    # a spanning path keeps it connected often enough to be interesting
    for v in range(1, verts):
        edges.append((v, v + 1))
    while len(edges) < n:
        a, b = rng.sample(range(1, verts + 1), 2)
        edges.append((a, b))
    rng.shuffle(edges)
    return from_graph(verts, edges)


def random_uniform(rng: random.Random) -> Matroid:
    n = rng.randint(3, 7)
    return uniform(rng.randint(1, n - 1), n)


def random_matroid(rng: random.Random, family: str) -> Matroid:
    if family == "graphic":
        return random_graphic(rng)
    if family == "uniform":
        return random_uniform(rng)
    base = random_graphic(rng) if rng.random() < 0.5 else random_uniform(rng)
    return base.dual()


def random_partner(rng: random.Random) -> Matroid:
    """A small second operand for parallel connections."""
    if rng.random() < 0.5:
        n = rng.randint(2, 4)
        return uniform(rng.randint(1, n - 1), n)
    edges = [(1, 2), (2, 3)] + [tuple(rng.sample(range(1, 4), 2)) for _ in range(rng.randint(0, 2))]
    return from_graph(3, edges)


def random_vbar(rng: random.Random, n: int, fld: FieldSpec, zeros: set | None = None) -> list:
    """A point with coordinate sum zero; coordinates in ``zeros`` vanish."""
    zeros = set(zeros or ())
    if rng.random() < 0.3:
        zeros |= set(rng.sample(range(1, n + 1), rng.randint(0, max(0, n - 2))))
    free = [i for i in range(1, n + 1) if i not in zeros]
    v = [0] * n
    if len(free) < 2:
        return fld.vector(v)
    small = rng.random() < 0.5
    for i in free[:-1]:
        v[i - 1] = rng.randint(-2, 2) if small else rng.randint(-30, 30)
    v[free[-1] - 1] = -sum(v)
    return fld.vector(v)


def random_torus_point(rng: random.Random, n: int, fld: FieldSpec, attempts: int = 200) -> list | None:
    for _ in range(attempts):
        if fld.is_rational:
            v = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(n - 1)]
        else:
            v = [rng.randrange(1, fld.p) for _ in range(n - 1)]
        v.append(-sum(v))
        v = fld.vector(v)
        if all(v):
            return v
    return None


def fuzz_case(seed: int, index: int) -> dict:
    rng = random.Random(f"{seed}:fuzz:{index}")
    family = ("graphic", "uniform", "dual")[index % 3]
    fld = FUZZ_FIELDS[(index // 3) % len(FUZZ_FIELDS)]
    m = random_matroid(rng, family)
    out: dict = {"index": index, "family": family, "field": str(fld), "n": m.n, "rank": m.rank(),
                 "circuits": [list(c) for c in m.circuits]}
    fails, checked = [], []
    v = random_vbar(rng, m.n, fld)
    out["point"] = [fld.to_json(x) for x in v]
    checked.append("propagation")
    if not propagation_check(m, fld, v):
        fails.append("propagation")
    prof = cohomology_profile(m, fld, v, projective=True)
    euler_expected = (-1) ** (m.rank() - 1) * m.beta() if m.rank() >= 1 else 0
    if m.rank() >= 1:
        checked.append("euler")
        if prof.projective_euler() != euler_expected:
            fails.append("euler")
    tp = random_torus_point(rng, m.n, fld)
    if tp is not None:
        checked.append("duality")
        for p in range(m.rank() + 1):
            if m.n - m.rank() - p < 0:
                continue
            if not duality_torus_check(m, fld, tp, p):
                fails.append(f"duality@{p}")
    out["torus_point"] = None if tp is None else [fld.to_json(x) for x in tp]
    non_loops = [i for i in m.ground if i not in m.loops()]
    if non_loops and m.n >= 2:
        i0 = rng.choice(non_loops)
        w = random_vbar(rng, m.n, fld, zeros={i0})
        checked.append("deletion-contraction")
        for p in range(m.rank() + 1):
            if not minor_inclusion_check(m, i0, fld, w, p).inequalities[0]:
                fails.append(f"deletion-contraction@{p}")
    dec = decone_check(m, fld, v) if non_loops else None
    if dec is not None and dec.status != "skipped":
        checked.append("decone")
        if dec.status == "fail":
            fails.append("decone")
    other = random_partner(rng)
    b1 = [i for i in m.ground if i not in m.loops()]
    b2 = [i for i in other.ground if i not in other.loops()]
    if b1 and b2 and m.rank() + other.rank() >= 2:
        base1, base2 = rng.choice(b1), rng.choice(b2)
        v1, v2 = random_vbar(rng, m.n, fld), random_vbar(rng, other.n, fld)
        checked.append("parallel")
        if not parallel_connection_check(m, other, base1, fld, v1, v2, None, base2):
            fails.append("parallel")
    out["checked"] = checked
    out["failures"] = fails
    out["ok"] = not fails
    return out


def hilbert_case(seed: int, index: int) -> dict:
    rng = random.Random(f"{seed}:hilbert:{index}")
    m1 = random_matroid(rng, ("graphic", "uniform")[index % 2])
    m2 = random_matroid(rng, ("uniform", "graphic")[index % 2])
    b1 = [i for i in m1.ground if i not in m1.loops()]
    b2 = [i for i in m2.ground if i not in m2.loops()]
    base1, base2 = rng.choice(b1), rng.choice(b2)
    ok = hilbert_identity_check(m1, m2, base1, base2)
    return {"index": index, "ok": ok, "n1": m1.n, "n2": m2.n, "base1": base1, "base2": base2}


# -- runners ---------------------------------------------------------------------

def worker_count() -> int:
    raw = os.environ.get("RESONATOR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_reference_case(args):
    name, seed, overrides = args
    ctx = Context(seed, overrides)
    try:
        res = REFERENCE_CASES[name](ctx)
    except Exception as exc:  # a crashing case is a regression, reported by name
        res = {"ok": False, "error": f"{type(exc).__name__}: {exc}"}
    return name, res


def _run_fuzz(args):
    kind, seed, index = args
    return fuzz_case(seed, index) if kind == "fuzz" else hilbert_case(seed, index)


def _map(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def run_reference_examples(seed: int = DEFAULT_SEED, overrides: dict | None = None,
                       only: list[str] | None = None, workers: int | None = None) -> dict:
    names = [n for n in REFERENCE_CASES if not only or n in only]
    jobs = [(n, seed, dict(overrides or {})) for n in names]
    results = _map(_run_reference_case, jobs, workers or worker_count())
    cases = {name: res for name, res in results}
    return {"suite": "paper-examples", "ok": all(r["ok"] for r in cases.values()),
            "failed": [n for n, r in cases.items() if not r["ok"]], "cases": cases}


def run_fuzz(seed: int = DEFAULT_SEED, cases: int = 200, hilbert: int = 20,
             workers: int | None = None) -> dict:
    jobs = [("fuzz", seed, i) for i in range(cases)] + [("hilbert", seed, i) for i in range(hilbert)]
    results = _map(_run_fuzz, jobs, workers or worker_count())
    fuzz, hil = results[:cases], results[cases:]
    failed = [f"fuzz-{r['index']}" for r in fuzz if not r["ok"]] + [f"hilbert-{r['index']}" for r in hil if not r["ok"]]
    return {"suite": "fuzz", "ok": not failed, "failed": failed, "cases": fuzz, "hilbert": hil}


SUITES = {"paper-examples": run_reference_examples, "fuzz": run_fuzz}

