import random

import pytest
from hypothesis import given, strategies as st

from resonator import catalog
from resonator.errors import NotSingularEnough
from resonator.fields import Q
from resonator.linalg import matmul
from resonator.matroid import uniform
from resonator.osalgebra import induced_map
from resonator.singular import singular_rank, split_signs, truncated_factorization, truncated_monomials
from resonator.subspace import Subspace


def test_pyramid_w_is_rank_two_singular():
    rep = singular_rank(catalog.pyramid(), Q, catalog.pyramid_singular())
    assert (rep.dim, rep.rank, rep.is_singular) == (3, 2, True)


def test_sigma_w_is_not_singular():
    sw = catalog.pyramid_singular().permute(catalog.PYRAMID_SIGMA)
    assert sw == catalog.pyramid_cover_space()
    rep = singular_rank(catalog.pyramid(), Q, sw)
    assert (rep.rank, rep.is_singular) == (3, False)


def test_line_has_rank_one():
    rep = singular_rank(uniform(2, 3), Q, Subspace.span([[1, -2, 1]], 3))
    assert (rep.dim, rep.rank, rep.is_singular) == (1, 1, False)


def test_warns_outside_vbar():
    with pytest.warns(UserWarning):
        singular_rank(uniform(2, 3), Q, Subspace.span([[1, 0, 0]], 3))


def test_pyramid_factorization_splits():
    m = catalog.pyramid()
    phi = truncated_factorization(m, Q, catalog.pyramid_singular(), 2, catalog.pyramid_phi_basis())
    assert phi.injective_degree1 and phi.source == uniform(3, 4)
    f = catalog.pyramid_labeling()
    # degree one, literally: -A(f) o Phi* is the identity on the u_s
    back = [[int(x) for x in r] for r in induced_map(f)[1].tolist()]
    got = matmul(phi.matrices[1], back, Q)
    assert [[-x for x in r] for r in got] == truncated_monomials(2, 3)[1]
    # as a ring map it is (-1)^p in degree p
    assert split_signs(phi, f) == [1, -1, 1]


def test_sigma_w_does_not_factor():
    sw = catalog.pyramid_cover_space()
    with pytest.raises(NotSingularEnough):
        truncated_factorization(catalog.pyramid(), Q, sw, 2)


def test_q_equal_dim_always_factors():
    phi = truncated_factorization(catalog.pyramid(), Q, catalog.pyramid_cover_space(), 3)
    assert phi.injective_degree1


def test_basis_must_span():
    with pytest.raises(ValueError):
        truncated_factorization(catalog.pyramid(), Q, catalog.pyramid_singular(), 2,
                                catalog.pyramid_phi_basis()[:2])


@given(st.randoms(use_true_random=False), st.integers(1, 3))
def test_factorization_iff_rank(rnd, dim):
    m = catalog.pyramid()
    rows = []
    for _ in range(dim):
        v = [rnd.randint(-2, 2) for _ in range(7)]
        rows.append(v + [-sum(v)])
    w = Subspace.span(rows, 8)
    rep = singular_rank(m, Q, w)
    for q in range(1, w.dim + 1):
        try:
            truncated_factorization(m, Q, w, q)
            ok = True
        except NotSingularEnough:
            ok = False
        assert ok == (rep.rank <= q)


def test_planes_in_w_multiply_nontrivially():
    rng = random.Random(0)
    w = catalog.pyramid_singular()
    pair = Subspace.span([w.sample(rng, 10), w.sample(rng, 10)], 8)
    assert singular_rank(catalog.pyramid(), Q, pair).rank == 2
