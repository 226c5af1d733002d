"""Rational piecewise-affine convex functions built as lower envelopes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DimensionError, NotContainedError
from .exact import Q, dot, fmt, qvec
from .polytope import RationalPolytope


@dataclass(frozen=True)
class AffineMap:
    """``x -> linear . x + constant``."""

    linear: tuple
    constant: Fraction

    def __call__(self, x: Sequence):
        return dot(self.linear, x) + self.constant

    def to_json(self):
        return {"linear": [fmt(c) for c in self.linear], "constant": fmt(self.constant)}


@dataclass(frozen=True)
class PiecewiseAffineFn:
    domain: RationalPolytope
    cells: tuple  # of (RationalPolytope, AffineMap)

    @classmethod
    def from_cells(cls, cells: Sequence) -> "PiecewiseAffineFn":
        """Build from ``(cell, (linear, constant))`` pairs; domain is their hull."""
        out = []
        for cell, m in cells:
            if not isinstance(m, AffineMap):
                m = AffineMap(qvec(m[0]), Q(m[1]))
            out.append((cell, m))
        pts = [v for cell, _ in out for v in cell.vertices]
        return cls(RationalPolytope.from_vrep(pts, out[0][0].dim), tuple(out))

    def __call__(self, x: Sequence):
        return evaluate(self, x)

    def to_json(self):
        return [{"vrep": [[fmt(c) for c in v] for v in cell.vertices], **m.to_json()}
                for cell, m in self.cells]


def _origin_in_affine_hull(p: RationalPolytope) -> bool:
    return all(o == 0 for _, o in p.eqs)


def lower_envelope_extension(p: RationalPolytope, samples: Sequence, c, lift: bool = False) -> PiecewiseAffineFn:
    """``F(x) = min{y : (x, y) in conv{(x_i, f_i), (x_i, c)}}``.

    ``p`` must sit in an affine hyperplane missing the origin; with
    ``lift=True`` everything is first placed in ``{last coordinate = 1}``.
    """
    c = Q(c)
    samples = [(qvec(x), Q(f)) for x, f in samples]
    if not samples:
        raise ValueError("no samples")
    if lift:
        p = RationalPolytope.from_vrep([v + (Fraction(1),) for v in p.vertices], p.dim + 1)
        samples = [(x + (Fraction(1),), f) for x, f in samples]
    if _origin_in_affine_hull(p):
        raise ValueError("the affine hull of the domain contains the origin; pass lift=True")
    n = p.dim
    for x, f in samples:
        if len(x) != n:
            raise DimensionError("sample has the wrong dimension")
        if not p.contains(x):
            raise NotContainedError(f"sample {x} is outside the domain")
        if f > c:
            raise ValueError(f"sample value {f} exceeds the bound {c}")
    # one unit above the cap keeps a vertical direction in the hull
    top = c + 1
    pts = [x + (f,) for x, f in samples] + [x + (top,) for x, _ in samples]
    hull = RationalPolytope.from_vrep(pts, n + 1)
    domain = RationalPolytope.from_vrep([x for x, _ in samples], n)
    cells = []
    for normal, off in hull.ineqs:
        last = normal[-1]
        if last <= 0:
            continue
        verts = [v[:n] for v in hull.vertices if dot(normal, v) == off]
        linear = tuple(-Q(a) / last for a in normal[:n])
        cells.append((RationalPolytope.from_vrep(verts, n), AffineMap(linear, Q(off) / last)))
    cells.sort(key=lambda cm: cm[0].vertices)
    return PiecewiseAffineFn(domain, tuple(cells))


def evaluate(f: PiecewiseAffineFn, x: Sequence):
    x = qvec(x)
    if not f.domain.contains(x):
        raise NotContainedError("point is outside the domain")
    for cell, m in f.cells:
        if cell.contains(x):
            return m(x)
    raise NotContainedError("no cell contains the point")


def _adjacent(a: RationalPolytope, b: RationalPolytope) -> bool:
    shared = [v for v in a.vertices if b.contains(v)]
    if not shared:
        return False
    common = RationalPolytope.from_vrep(shared, a.dim)
    return common.affine_dim == max(a.affine_dim, b.affine_dim) - 1


def decomposition(f: PiecewiseAffineFn):
    """Cells plus a convexity verdict.

    Convex means: across every pair of adjacent cells, each cell's own map
    dominates the neighbour's map on its own vertices.
    """
    convex = True
    for (ca, ma), (cb, mb) in combinations(f.cells, 2):
        if not _adjacent(ca, cb):
            continue
        if any(ma(v) < mb(v) for v in ca.vertices) or any(mb(v) < ma(v) for v in cb.vertices):
            convex = False
            break
    return list(f.cells), convex
