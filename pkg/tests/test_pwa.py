import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from adjring.errors import NotContainedError
from adjring.polytope import RationalPolytope
from adjring.pwa import (AffineMap, PiecewiseAffineFn, decomposition, evaluate,
                         lower_envelope_extension)
from oracles import lower_envelope_value

SEG = RationalPolytope.from_vrep([(0, 1), (2, 1)])


def v_shape():
    return lower_envelope_extension(SEG, [((0, 1), 0), ((1, 1), -1), ((2, 1), 0)], 0)


def test_v_shape_cells():
    f = v_shape()
    maps = sorted((m.linear, m.constant) for _, m in f.cells)
    # on the hyperplane t' = 1 the maps are -t and t - 2
    vals = sorted((m((F(1, 2), 1)), m((F(3, 2), 1))) for _, m in f.cells)
    assert len(maps) == 2
    assert vals == [(-F(3, 2), -F(1, 2)), (-F(1, 2), -F(3, 2))]
    cells, convex = decomposition(f)
    assert len(cells) == 2 and convex


def test_evaluations():
    f = v_shape()
    assert evaluate(f, (F(1, 2), 1)) == -F(1, 2)
    assert f((1, 1)) == -1
    assert f((F(3, 2), 1)) == -F(1, 2)
    with pytest.raises(NotContainedError):
        f((3, 1))


def test_affine_triangle_single_cell():
    tri = [(0, 0), (1, 0), (0, 1)]
    samples = [(x, 2 * x[0] - x[1] + 1) for x in tri]
    f = lower_envelope_extension(RationalPolytope.from_vrep(tri), samples, 3, lift=True)
    cells, convex = decomposition(f)
    assert len(cells) == 1 and convex
    assert f((F(1, 3), F(1, 3), 1)) == F(4, 3)


def test_tent_not_convex():
    left = RationalPolytope.from_vrep([(0,), (1,)])
    right = RationalPolytope.from_vrep([(1,), (2,)])
    tent = PiecewiseAffineFn.from_cells([(left, ((1,), 0)), (right, ((-1,), 2))])
    assert decomposition(tent)[1] is False
    assert isinstance(tent.cells[0][1], AffineMap)


def test_origin_in_hull_rejected():
    with pytest.raises(ValueError):
        lower_envelope_extension(RationalPolytope.box([0], [1]), [((0,), 0)], 1)


def test_sample_above_cap_rejected():
    with pytest.raises(ValueError):
        lower_envelope_extension(SEG, [((0, 1), 5)], 1)


def _random_samples(rng):
    xs = sorted({F(rng.randint(0, 20), rng.randint(1, 4)) for _ in range(6)})
    a, b = F(rng.randint(-3, 3)), F(rng.randint(-3, 3))
    return [(x, max(a * x, b * x - 2) + F(rng.randint(0, 2), 3)) for x in xs]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_envelope_matches_oracle_and_is_convex(seed):
    rng = random.Random(seed)
    samples = _random_samples(rng)
    c = max(f for _, f in samples)
    dom = RationalPolytope.from_vrep([(x, 1) for x, _ in samples])
    f = lower_envelope_extension(dom, [((x, 1), v) for x, v in samples], c)
    lo, hi = samples[0][0], samples[-1][0]
    for _ in range(10):
        t = lo + (hi - lo) * F(rng.randint(0, 100), 100)
        assert f((t, 1)) == lower_envelope_value(samples, t)
    for x, v in samples:
        assert f((x, 1)) <= v
    for _ in range(10):
        x = lo + (hi - lo) * F(rng.randint(0, 10), 10)
        y = lo + (hi - lo) * F(rng.randint(0, 10), 10)
        t = F(rng.randint(1, 9), 10)
        assert f((t * x + (1 - t) * y, 1)) <= t * f((x, 1)) + (1 - t) * f((y, 1))
    assert decomposition(f)[1]
    for cell, m in f.cells:
        assert all(isinstance(c, F) for v in cell.vertices for c in v)
        assert isinstance(m.constant, F)
