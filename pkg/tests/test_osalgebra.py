import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import BruteOS
from resonator import catalog, linalg
from resonator.errors import IncompleteMap
from resonator.fields import FieldSpec, Q
from resonator.matroid import free, uniform
from resonator.osalgebra import build_os, induced_map, multiply, normal_form
from resonator.weakmap import WeakMap, simplification_map
from strategies import small_matroids


def test_u23_dims():
    assert build_os(uniform(2, 3)).dims() == [1, 3, 2]


def test_k5_dims():
    assert build_os(catalog.get("k5")).dims() == [1, 10, 35, 50, 24]


def test_free_dims_are_binomial():
    assert build_os(free(5)).dims() == [comb(5, k) for k in range(6)]


def test_projective_dims():
    assert build_os(uniform(2, 3)).projective_dims() == [1, 2, 0]
    assert build_os(catalog.fat_triangle()).dims() == [1, 3, 2]
    assert build_os(catalog.fat_triangle()).projective_dims() == [1, 2, 0]


def test_u23_normal_forms():
    m = uniform(2, 3)
    assert normal_form(m, [1, 2, 3]).is_zero()
    assert normal_form(m, [2, 3]).coeffs == {(1, 2): -1, (1, 3): 1}
    assert normal_form(m, [3, 2]).coeffs == {(1, 2): 1, (1, 3): -1}
    assert normal_form(m, [1, 3]).coeffs == {(1, 3): 1}


def test_u23_boundary_product_vanishes():
    # (e1 - e2)(e2 - e3) = e12 - e13 + e23 is the boundary of e123
    alg = build_os(uniform(2, 3))
    a = alg.linear_form([1, -1, 0])
    b = alg.linear_form([0, 1, -1])
    assert multiply(a, b).is_zero()
    assert BruteOS(3, [(1, 2, 3)]).is_zero({(1, 2): 1, (1, 3): -1, (2, 3): 1}, 2)


def test_product_of_parallel_generators_vanishes():
    alg = build_os(catalog.fat_triangle())
    assert multiply(alg.generator(1), alg.generator(2)).is_zero()


def test_loop_kills_algebra():
    from resonator.matroid import from_circuits
    assert build_os(from_circuits(2, [[1]])).dims() == [0, 0]


@given(small_matroids, st.sampled_from([None, 2, 3]))
def test_dims_match_brute_force(m, p):
    if m.n > 7:
        return
    brute = BruteOS(m.n, m.circuits, p)
    assert build_os(m).dims() == list(brute.dims())[: m.rank() + 1]


@given(small_matroids, st.randoms(use_true_random=False))
def test_normal_form_is_congruent(m, rnd):
    if m.n > 7 or m.loops():
        return
    alg = build_os(m)
    brute = BruteOS(m.n, m.circuits)
    k = rnd.randint(1, min(3, m.n))
    seq = tuple(sorted(rnd.sample(range(1, m.n + 1), k)))
    diff = {seq: 1}
    for mono, c in alg.normal_form(seq).items():
        diff[mono] = diff.get(mono, 0) - c
    assert brute.is_zero(diff, k)


@given(small_matroids)
def test_boundary_squares_to_zero(m):
    alg = build_os(m)
    for p in range(2, alg.rank + 1):
        for mono in alg.basis[p][:6]:
            assert alg.monomial(mono).boundary().boundary().is_zero()


@given(small_matroids)
def test_projective_kernel_exact(m):
    if m.loops() or not m.n:
        return
    alg = build_os(m)
    total = sum(alg.dims())
    pdims = alg.projective_dims()
    assert 2 * sum(pdims) == total
    assert pdims[alg.rank] == 0
    # the derivation is exact: dim A^p = dim A-bar^p + dim A-bar^(p-1)
    for p in range(alg.rank + 1):
        assert alg.dim(p) == pdims[p] + (pdims[p - 1] if p else 0)


def test_induced_map_is_ring_map():
    f = catalog.pyramid_labeling()
    src, dst = build_os(f.source), build_os(f.target)
    mats = induced_map(f)

    def image(el):
        rows = [list(map(int, r)) for r in mats[el.degree]]
        vec = [sum(c * rows[src.index[el.degree][k]][j] for k, c in el.coeffs.items())
               for j in range(dst.dim(el.degree))]
        return dst.element({mono: vec[j] for j, mono in enumerate(dst.basis[el.degree])}, el.degree)

    for a, b in itertools.combinations(range(1, 9), 2):
        x, y = src.generator(a), src.generator(b)
        assert image(multiply(x, y)) == multiply(image(x), image(y))
        assert image(multiply(x, y).boundary()) == image(multiply(x, y)).boundary()


def test_incomplete_map_has_no_algebra_map():
    with pytest.raises(IncompleteMap):
        induced_map(WeakMap(uniform(2, 3), uniform(2, 2), [0, 1, 2, 0]))


def test_simplification_is_isomorphism():
    m = catalog.b3_doubled()
    mats = induced_map(simplification_map(m))
    simple = m.simplify()[0]
    for p, mat in enumerate(mats):
        assert linalg.rank(mat.tolist(), Q) == build_os(simple).dim(p)


def test_characteristic_independence_of_dims():
    m = catalog.x_graph()
    assert build_os(m).projective_dims(FieldSpec.prime(2)) == build_os(m).projective_dims(Q)
