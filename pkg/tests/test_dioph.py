import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from adjring.dioph import approximate_in_polytope, convergents, stays_in_face
from adjring.errors import NotContainedError
from adjring.exact import QuadScalar
from adjring.polytope import RationalPolytope
from oracles import cf_convergents_decimal, quad_decimal

R2 = QuadScalar.sqrt(2)


def test_sqrt2_convergents():
    assert convergents(R2, 5) == [1, F(3, 2), F(7, 5), F(17, 12), F(41, 29)]


def test_half_sqrt2_convergents():
    assert convergents(R2 / 2, 5) == [0, 1, F(2, 3), F(5, 7), F(12, 17)]


def test_rational_expansion_stops():
    c = convergents(F(3, 4), 10)
    assert c == [0, 1, F(3, 4)] and c.exhausted


@pytest.mark.parametrize("a,b,d", [(0, 1, 3), (F(1, 3), F(2, 5), 5), (-1, F(1, 7), 2)])
def test_convergents_match_decimal_oracle(a, b, d):
    x = QuadScalar(F(a), F(b), d)
    ours = convergents(x, 12)
    assert ours == cf_convergents_decimal(quad_decimal(F(a), F(b), d, 80), 12)
    for c1, c2 in zip(ours, ours[1:]):
        assert (c1 < x) != (c2 < x)


def test_rational_point_single():
    res = approximate_in_polytope(RationalPolytope.box([0], [1]), [F(1, 2)], 2, F(1, 10))
    assert res.points == (((F(1, 2),), 4, 1),)


def test_half_sqrt2_bracket():
    x = [R2 / 2]
    res = approximate_in_polytope(RationalPolytope.box([0], [1]), x, 1, F(1, 2))
    assert [(p, k) for p, k, _ in res.points] == [((F(2, 3),), 3), ((F(5, 7),), 7)]
    assert res.violations(x, 1, F(1, 2)) == []


def test_diagonal_segment():
    p = RationalPolytope.from_vrep([(0, 0), (1, 1)])
    x = [R2 / 2, R2 / 2]
    res = approximate_in_polytope(p, x, 2, F(1, 2))
    assert res.violations(x, 2, F(1, 2)) == []
    for xi, ki, _ in res.points:
        q = xi[0].denominator
        assert xi[0] == xi[1] and ki == 2 * q
    assert stays_in_face(p, x, res)


def test_errors():
    with pytest.raises(NotContainedError):
        approximate_in_polytope(RationalPolytope.box([0], [1]), [R2], 1, F(1, 2))
    with pytest.raises(ValueError):
        approximate_in_polytope(RationalPolytope.box([0], [1]), [R2 / 2], 1, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 5]))
def test_random_instances_satisfy_conditions(seed, d):
    rng = random.Random(seed)
    # triangle face of a box, plus x on a random segment of it
    p = RationalPolytope.from_vrep([(0, 0), (3, 0), (0, 3)])
    s = (F(rng.randint(1, 3)), F(rng.randint(-2, 2)))
    t = QuadScalar(0, 1, d) / (4 * d)
    base = (F(1, 2), F(1, 2))
    x = [base[0] + s[0] * t, base[1] + s[1] * t]
    k = rng.randint(1, 6)
    eps = F(1, rng.randint(2, 50))
    res = approximate_in_polytope(p, x, k, eps)
    assert res.violations(x, k, eps) == []
    assert all(p.contains(xi) for xi, _, _ in res.points)
    assert stays_in_face(p, x, res)
