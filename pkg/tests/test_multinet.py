import pytest

from resonator import catalog
from resonator.errors import CharDividesBlockSize, ParallelSplit
from resonator.fields import FieldSpec, Q
from resonator.matroid import Partition, free, uniform
from resonator.multinet import (multinet_component, multinet_section, parallel_directions,
                                partition_morphism, resonance_component, search_multinets,
                                simplified_component, verify_multinet)
from resonator.osalgebra import build_os, multiply
from resonator.resonance import cohomology_profile
from resonator.subspace import Subspace


def b3_lines(m):
    return [f.elements for f in m.irreducible_flats(2, 2)]


def test_b3_multinet_valid():
    m = catalog.b3_doubled()
    verdict = verify_multinet(m, catalog.B3_MULTINET, b3_lines(m))
    assert verdict.valid
    assert list(verdict.axioms) == ["k_at_least_3", "equal_block_sizes", "cross_pairs_span_flats",
                                    "balanced_flats", "blocks_connected"]


def test_unequal_blocks_fail_axiom_one():
    m = uniform(2, 4)
    verdict = verify_multinet(m, Partition.parse("12|3|4"), [(1, 2, 3, 4)])
    assert not verdict.valid
    assert not verdict.axioms["equal_block_sizes"]


def test_u23_net():
    verdict = verify_multinet(uniform(2, 3), Partition.parse("1|2|3"), [(1, 2, 3)])
    assert verdict.valid


def test_rejects_reducible_flat():
    with pytest.raises(ValueError):
        verify_multinet(uniform(2, 3), Partition.parse("1|2|3"), [(1, 2)])


def test_component_dims():
    assert multinet_component(catalog.B3_MULTINET).dim == 2
    assert multinet_component(Partition.parse("1|2|3")) == Subspace.vbar(3)
    assert Subspace.vbar(12).contains(multinet_component(catalog.B3_MULTINET))


def test_b3_cover_is_component_plus_parallel_directions():
    m = catalog.b3_doubled()
    cover = resonance_component(m, catalog.B3_MULTINET)
    assert parallel_directions(m).dim == 3
    assert cover.dim == 5
    simple, pushed = simplified_component(m, catalog.B3_MULTINET)
    assert pushed.dim == 2 and simple == catalog.get("b3")


def test_partition_morphism():
    m = catalog.b3_doubled()
    f = partition_morphism(m, catalog.B3_MULTINET)
    assert f.target == uniform(2, 3) and f.complete
    assert partition_morphism(uniform(2, 3), Partition.parse("1|2|3")).complete
    with pytest.raises(ParallelSplit):
        partition_morphism(catalog.fat_triangle(), Partition.parse("13|24|56"))


def test_b3_section_splits():
    sec = multinet_section(catalog.b3_doubled(), catalog.B3_MULTINET, Q, seed=2)
    assert sec.ring_map and sec.split
    assert all(sec.h1_injective) and min(sec.h1_dims) >= 1


def test_u23_section_is_identity():
    sec = multinet_section(uniform(2, 3), Partition.parse("1|2|3"))
    assert sec.matrices[1] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_b3_section_rejected_in_char_two():
    with pytest.raises(CharDividesBlockSize):
        multinet_section(catalog.b3_doubled(), catalog.B3_MULTINET, FieldSpec.prime(2))


def test_search_finds_b3_multinet():
    found = search_multinets(catalog.b3_doubled())
    assert any(mn.blocks == catalog.B3_MULTINET and (mn.k, mn.d) == (3, 4) for mn in found)


def test_search_u23():
    found = search_multinets(uniform(2, 3))
    assert [(mn.k, mn.d) for mn in found] == [(3, 1)]


def test_search_free_empty():
    assert search_multinets(free(4)) == []


def test_component_points_resonant_and_isotropic():
    m = catalog.b3_doubled()
    comp = multinet_component(catalog.B3_MULTINET)
    alg = build_os(m)
    a, b = (alg.linear_form(r) for r in comp.basis)
    assert multiply(a, b).is_zero()
    for r in comp.basis:
        assert cohomology_profile(m, Q, r)[1] >= 1
