import random

import pytest
from hypothesis import given, strategies as st

from resonator import catalog
from resonator.bounds import (Cover, bound, compare_bound, cover_subspace, p_subspace, q_subspace,
                              sv_bound_membership)
from resonator.errors import CoverLimitReached, NotACover
from resonator.fields import Q
from resonator.matroid import Partition, uniform
from resonator.resonance import cohomology_profile
from resonator.subspace import Subspace
from strategies import small_matroids


def test_p_subspace_extremes():
    assert p_subspace(Partition.parse("123456")) == Subspace.vbar(6)
    assert p_subspace(Partition.singletons(6)) == Subspace.zero(6)
    assert p_subspace(Partition.parse("12|34|56")).dim == 3


def test_q_subspace():
    assert q_subspace(Partition.singletons(4)) == Subspace.full(4)
    assert q_subspace(Partition.parse("1234")) == Subspace.span([[1, 1, 1, 1]], 4)
    q = q_subspace(catalog.B3_MULTINET)
    assert q.dim == 3 and q.intersect(Subspace.vbar(12)).dim == 2


@given(st.integers(1, 8).flatmap(lambda n: st.lists(st.integers(1, n), min_size=n, max_size=n)))
def test_p_and_q_complementary(labels):
    blocks = {}
    for i, b in enumerate(labels, 1):
        blocks.setdefault(b, []).append(i)
    part = Partition(tuple(tuple(b) for b in blocks.values()))
    p, q = p_subspace(part), q_subspace(part)
    assert p.dim + q.dim == part.n
    assert p.intersect(q).dim == 0


def test_pyramid_covers():
    m = catalog.pyramid()
    narrow = cover_subspace(m, catalog.PYRAMID_COVER)
    wide = cover_subspace(m, catalog.PYRAMID_COVER_WIDE)
    assert narrow.dim == 3 and wide.dim == 4
    assert wide.contains(narrow) and narrow != wide


def test_singleton_cover_is_zero():
    m = uniform(2, 3)
    assert cover_subspace(m, [(1,), (2,), (3,)]) == Subspace.zero(3)


def test_not_a_cover():
    with pytest.raises(NotACover):
        Cover.make([(1, 2)], 3)
    with pytest.raises(NotACover):
        # three flats, two elements: no surjective witness
        Cover.make([(1,), (1, 2), (2,)], 2)


def test_x_graph_bound():
    arr = bound(catalog.x_graph(), 2)
    want = sorted((p_subspace(part) for part in catalog.X_GRAPH_R2), key=Subspace.sort_key)
    assert arr.components == want


def test_top_degree_bound_is_vbar():
    m = catalog.pyramid()
    assert bound(m, m.rank()).components == [Subspace.vbar(8)]


def test_b3_essential_cover_dim():
    m = catalog.b3_doubled()
    lines = [f.elements for f in m.irreducible_flats(2, 2)]
    assert cover_subspace(m, lines).dim == 5
    simple = catalog.get("b3")
    assert cover_subspace(simple, [f.elements for f in simple.irreducible_flats(2, 2)]).dim == 2


def test_cover_cap():
    m = catalog.get("k5")
    arr = bound(m, 2, cap=3)
    assert arr.truncated
    with pytest.raises(CoverLimitReached):
        bound(m, 2, cap=3, strict=True)


def test_essential_bound_can_be_empty():
    assert bound(uniform(3, 4), 0, essential=True).components == []


def test_sv_membership():
    rnd = random.Random(5)
    m = uniform(3, 6)
    for _ in range(5):
        v = [rnd.randint(-100, 100) for _ in range(5)]
        assert not sv_bound_membership(m, v + [-sum(v)], 1)
    assert sv_bound_membership(m, [0] * 6, 1)


def test_compare_x_graph_tight():
    cmp = compare_bound(catalog.x_graph(), Q, 2, mode="symbolic")
    assert cmp.tight and len(cmp.verdicts) == 4


def test_compare_pyramid_gap():
    m = catalog.pyramid()
    cmp = compare_bound(m, Q, 2, mode="probabilistic", seed=1)
    wide = cover_subspace(m, catalog.PYRAMID_COVER_WIDE)
    assert wide in cmp.arrangement.components
    gap = cmp.verdicts[cmp.arrangement.components.index(wide)]
    assert gap.status == "not_contained" and gap.exact


def test_k5_delres_inside_bound():
    # the flats on which every vector of W sums to zero already cover K5
    m = catalog.get("k5")
    w = catalog.delres_subspace(10)
    flats = [f.elements for f in m.irreducible_flats(3)
             if all(sum(r[i - 1] for i in f.elements) == 0 for r in w.basis)]
    assert sorted({i for f in flats for i in f}) == list(range(1, 11))
    assert cover_subspace(m, flats).contains(w)


@given(small_matroids)
def test_bounds_nest(m):
    if m.loops() or m.rank() > 3:
        return
    arrs = [bound(m, p) for p in range(m.rank() + 1)]
    for low, high in zip(arrs, arrs[1:]):
        for comp in low.components:
            assert any(c.contains(comp) for c in high.components)


@given(small_matroids, st.randoms(use_true_random=False))
def test_resonance_lies_in_bound(m, rnd):
    # realizable inputs only: graphic and uniform matroids over Q
    if m.loops() or m.rank() > 3:
        return
    arrs = [bound(m, p) for p in range(m.rank() + 1)]
    for _ in range(4):
        v = [rnd.randint(-2, 2) for _ in range(m.n - 1)]
        v.append(-sum(v))
        prof = cohomology_profile(m, Q, v)
        for p in range(m.rank() + 1):
            if prof[p] >= 1:
                assert sv_bound_membership(m, v, p)
                assert arrs[p].contains_vector(v)
