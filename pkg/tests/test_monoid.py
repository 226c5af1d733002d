import random

import pytest
from hypothesis import given, settings, strategies as st

from adjring.errors import NotPointedError
from adjring.monoid import (AffineMonoid, decompose, hilbert_basis, is_generated,
                            monoid_elements, veronese_submonoid)
from adjring.polytope import RationalCone
from oracles import box_points, brute_hilbert_basis


def cone(*gens):
    return RationalCone.from_generators(list(gens))


def test_unimodular_quadrant():
    assert hilbert_basis(cone((1, 0), (0, 1))).elements == ((0, 1), (1, 0))


@pytest.mark.parametrize("k", [2, 3])
def test_thin_cones_against_oracle(k):
    hb = hilbert_basis(cone((1, 0), (1, k)))
    assert sorted(hb.elements) == [(1, j) for j in range(k + 1)]
    assert sorted(hb.elements) == brute_hilbert_basis([(1, 0), (1, k)], ((0, 0), (2, 2 * k)))


def test_non_pointed_rejected():
    with pytest.raises(NotPointedError):
        hilbert_basis(cone((1, 0), (-1, 0), (0, 1)))


def test_three_dim_cone():
    hb = hilbert_basis(cone((1, 0, 0), (0, 1, 0), (1, 1, 2)))
    assert set(hb.elements) == {(1, 0, 0), (0, 1, 0), (1, 1, 2), (1, 1, 1)}


def test_veronese_examples():
    assert set(veronese_submonoid(AffineMonoid.free(2), [(2, 0), (0, 1)]).generators) == {(2, 0), (0, 1)}
    assert veronese_submonoid(AffineMonoid.free(1), [(3,)]).generators == ((3,),)
    s = AffineMonoid(((1, 0), (1, 1), (1, 2)), 2)
    v = veronese_submonoid(s, [(1, 1), (2, 0)])
    assert set(v.generators) == {(1, 1), (2, 0), (2, 4)}
    assert v.finite_index
    # brute force: every even-sum element of s up to degree 6 decomposes over v
    for e in monoid_elements(s.cone(), 6):
        if (e[0] + e[1]) % 2 == 0:
            assert decompose(e, v.generators) is not None


def test_veronese_full_lattice_is_identity():
    s = AffineMonoid(((1, 0), (1, 1), (1, 2)), 2)
    assert set(veronese_submonoid(s, [(1, 0), (0, 1)]).generators) == set(s.generators)


def test_veronese_infinite_index_flagged():
    v = veronese_submonoid(AffineMonoid.free(2), [(1, 0)])
    assert v.finite_index is False
    assert v.generators == ((1, 0),)
    w = veronese_submonoid(AffineMonoid.free(2), [(1, 1)])
    assert w.generators == ((1, 1),) and not w.finite_index


def test_is_generated_examples():
    assert is_generated(5, [(1, 0), (0, 1)]) == (True, None)
    ok, bad = is_generated(6, [(1, 0), (1, 2)])
    assert not ok and bad == (1, 1)
    assert is_generated(6, [(1, 0), (1, 1), (1, 2)])[0]


def test_decompose_examples():
    gens = [(1, 0), (1, 1), (1, 2)]
    assert decompose((2, 1), gens) == [(1, 0), (1, 1)]
    assert decompose((0, 0), gens) == []
    assert decompose((1, 1), [(1, 0), (1, 2)]) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_hilbert_basis_properties(seed):
    rng = random.Random(seed)
    a = (rng.randint(1, 3), rng.randint(-3, 3))
    b = (rng.randint(1, 3), rng.randint(-3, 3))
    if a[0] * b[1] - a[1] * b[0] == 0:
        return
    c = cone(a, b)
    hb = hilbert_basis(c).elements
    s = set(hb)
    # minimality
    for h in hb:
        for x in hb:
            for y in hb:
                assert h != (x[0] + y[0], x[1] + y[1])
    # completeness and agreement with enumeration
    assert sorted(hb) == brute_hilbert_basis([a, b], ((0, -12), (8, 12)))
    for p in box_points((0, -6), (6, 6)):
        if any(p) and c.contains(p) and sum(abs(t) for t in p) <= 10:
            assert decompose(p, hb) is not None
    assert all(c.contains(h) for h in s)
