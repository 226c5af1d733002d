"""Affine monoids: Hilbert bases of ``C cap L``, Veronese submonoids, generation.

Hilbert bases are computed by triangulating the cone into simplicial
subcones, listing the lattice points of each half-open fundamental
parallelepiped (coset representatives read off a Hermite normal form), and
discarding every candidate that is a sum of two nonzero monoid elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, NotPointedError
from .exact import (Q, _column_hermite, det, dot, integer_kernel, integerize,
                    inverse, matvec, nullspace, rank, saturated_basis,
                    solve_linear, transpose)
from .polytope import RationalCone, RationalPolytope


def graded_key(grading):
    def key(v):
        return (dot(grading, v), tuple(v))
    return key


def default_grading(vectors: Sequence[Sequence], dim: int) -> tuple:
    """All-ones if it is positive on ``vectors``; else an interior dual vector."""
    ones = tuple(1 for _ in range(dim))
    if all(dot(ones, v) > 0 for v in vectors if any(v)):
        return ones
    cone = RationalCone.from_generators(vectors, dim)
    if not cone.is_pointed:
        raise NotPointedError("no positive grading exists on a non-pointed cone")
    g = [0] * dim
    for n in cone.ineqs:
        g = [a + b for a, b in zip(g, n)]
    return tuple(g)


@dataclass(frozen=True)
class HilbertBasis:
    cone: RationalCone
    elements: tuple
    grading: tuple

    def to_json(self):
        return [list(e) for e in self.elements]


@dataclass(frozen=True)
class AffineMonoid:
    """Monoid generated by ``generators`` inside ``Z^rank``."""

    generators: tuple
    rank: int
    finite_index: bool | None = None

    @classmethod
    def free(cls, r: int) -> "AffineMonoid":
        return cls(tuple(tuple(int(i == j) for j in range(r)) for i in range(r)), r)

    def cone(self) -> RationalCone:
        return RationalCone.from_generators(self.generators, self.rank)


# ---------------------------------------------------------------------------
# triangulation and parallelepipeds

def _triangulate(rays: list) -> list:
    """Placing triangulation of a pointed cone into simplicial ray subsets."""
    d = rank(rays)
    if len(rays) == d:
        return [list(rays)]
    r0 = rays[0]
    cone = RationalCone.from_generators(rays, len(r0))
    out = []
    for n in cone.ineqs:
        if dot(n, r0) == 0:
            continue
        sub = [r for r in rays if dot(n, r) == 0]
        for simplex in _triangulate(sub):
            out.append([r0] + simplex)
    return out


def _parallelepiped_points(gens: list) -> list:
    """Lattice points ``sum lambda_i g_i`` with ``0 <= lambda_i < 1`` (full rank)."""
    k = len(gens)
    g = transpose(gens)  # columns are generators
    gi = [[int(x) for x in row] for row in g]
    u, _ = _column_hermite(gi)
    h = [[sum(gi[i][t] * u[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
    diag = [h[i][i] for i in range(k)]
    ginv = inverse(g)
    pts = []

    def rec(i, y):
        if i == k:
            lam = matvec(ginv, y)
            frac = [x - (x.numerator // x.denominator) for x in lam]
            pts.append(tuple(int(v) for v in matvec(g, frac)))
            return
        for t in range(abs(diag[i])):
            rec(i + 1, y + [t])

    rec(0, [])
    return pts


# ---------------------------------------------------------------------------
# Hilbert bases

def _lattice_basis(cone: RationalCone, lattice) -> list:
    """Basis of ``span(cone) cap L``."""
    n = cone.dim
    span_gens = list(cone.rays)
    if lattice is None:
        return saturated_basis(span_gens, n)
    lat = _reduce_lattice([tuple(int(x) for x in v) for v in lattice], n)
    perp = nullspace(span_gens, n)
    if not perp:
        return lat
    # y in Z^m maps to sum y_i lat_i, which must be orthogonal to perp
    w = [integerize(p) for p in perp]
    wl = [[dot(row, v) for v in lat] for row in w]
    ker = integer_kernel(wl)
    return [tuple(sum(c * v[i] for c, v in zip(kv, lat)) for i in range(n)) for kv in ker]


def _reduce_lattice(gens, n):
    """Basis of the lattice generated by integer vectors ``gens``."""
    # row-style Hermite reduction via the column routine on the transpose
    g = [list(map(int, v)) for v in gens]
    cols = transpose(g)  # n x m
    u, k = _column_hermite([list(r) for r in cols])
    h = [[sum(cols[i][t] * u[t][j] for t in range(len(g))) for j in range(len(g))] for i in range(n)]
    return [tuple(h[i][j] for i in range(n)) for j in range(k)]


def hilbert_basis(c: RationalCone, grading: Sequence | None = None, lattice=None) -> HilbertBasis:
    """Unique minimal generating set of ``c cap L`` (``L = Z^n`` by default).

    ``lattice`` optionally gives generators of a sublattice ``L``.  Elements
    are returned in graded-lex order for ``grading`` (all-ones by default).
    """
    if not c.is_pointed:
        raise NotPointedError("Hilbert basis of a non-pointed cone is not unique")
    n = c.dim
    if lattice is not None:
        # a lower-rank L only sees the slice of c inside span(L)
        lat_perp = nullspace([tuple(int(x) for x in v) for v in lattice], n)
        if any(dot(w, r) != 0 for w in lat_perp for r in c.rays):
            c = RationalCone.from_inequalities(c.ineqs, list(c.eqs) + [integerize(w) for w in lat_perp], n)
    if grading is None:
        grading = default_grading(list(c.rays), n) if c.rays else tuple([1] * n)
    grading = tuple(grading)
    if not c.rays:
        return HilbertBasis(c, (), grading)
    basis = _lattice_basis(c, lattice)
    k = len(basis)
    bt = transpose(basis)  # n x k, columns basis vectors

    def to_coords(x):
        y = solve_linear(bt, x)
        return y

    rays_c = [integerize(to_coords(r)) for r in c.rays]
    coords_cone = RationalCone.from_generators(rays_c, k)
    cand = set()
    for simplex in _triangulate(rays_c):
        for r in simplex:
            cand.add(tuple(r))
        for p in _parallelepiped_points(simplex):
            if any(p):
                cand.add(p)
    cand = sorted(cand, key=lambda v: (dot(grading, matvec(bt, v)), v))
    hb = []
    for x in cand:
        dx = dot(grading, matvec(bt, x))
        reducible = False
        for y in cand:
            if y == x:
                continue
            if dot(grading, matvec(bt, y)) >= dx:
                break
            diff = tuple(a - b for a, b in zip(x, y))
            if coords_cone.contains(diff):
                reducible = True
                break
        if not reducible:
            hb.append(x)
    elems = sorted((tuple(int(v) for v in matvec(bt, x)) for x in hb), key=graded_key(grading))
    return HilbertBasis(c, tuple(elems), grading)


# ---------------------------------------------------------------------------
# decomposition and generation checks

def decompose(e: Sequence[int], gens: Sequence[Sequence[int]], grading: Sequence | None = None):
    """One multiset of ``gens`` summing to ``e`` (sorted list) or ``None``.

    Depth-first search over non-decreasing generator indices in graded-lex
    order with memoised failures.
    """
    e = tuple(int(x) for x in e)
    n = len(e)
    gens = [tuple(int(x) for x in g) for g in gens if any(g)]
    if not any(e):
        return []
    if not gens:
        return None
    if grading is None:
        grading = default_grading(gens, n)
    gens = sorted(set(gens), key=graded_key(grading))
    degs = [dot(grading, g) for g in gens]
    if min(degs) <= 0:
        raise ValueError("grading must be positive on the generators")
    failed = set()

    def rec(rem, start):
        if not any(rem):
            return []
        d = dot(grading, rem)
        if d <= 0 or (rem, start) in failed:
            return None
        for i in range(start, len(gens)):
            if degs[i] > d:
                break
            nxt = tuple(a - b for a, b in zip(rem, gens[i]))
            sub = rec(nxt, i)
            if sub is not None:
                return [gens[i]] + sub
        failed.add((rem, start))
        return None

    return rec(e, 0)


def monoid_elements(c: RationalCone, bound, grading: Sequence | None = None, lattice=None) -> list:
    """Lattice points of ``c`` (in ``L``) with degree at most ``bound``, graded-lex."""
    n = c.dim
    if grading is None:
        grading = default_grading(list(c.rays), n) if c.rays else tuple([1] * n)
    ineqs = [(tuple(x), 0) for x in c.ineqs] + [(tuple(-g for g in grading), -Q(bound))]
    eqs = [(tuple(x), 0) for x in c.eqs]
    p = RationalPolytope.from_hrep(ineqs, eqs, n)
    pts = p.lattice_points()
    if lattice is not None:
        lat = _reduce_lattice([tuple(int(x) for x in v) for v in lattice], n)
        bt = transpose(lat)
        pts = [x for x in pts if _in_lattice(bt, x)]
    return sorted(pts, key=graded_key(grading))


def _in_lattice(bt, x):
    if not bt:
        return not any(x)
    y = solve_linear(bt, x)
    return y is not None and all(v.denominator == 1 for v in y)


def is_generated(bound, gens: Sequence, cone: RationalCone | None = None,
                 grading: Sequence | None = None, lattice=None):
    """``(True, None)`` if every monoid element of degree <= bound decomposes.

    Otherwise ``(False, x)`` with the first counterexample in graded-lex
    order.  The monoid is ``cone cap L``; ``cone`` defaults to ``cone(gens)``.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    if cone is None:
        cone = RationalCone.from_generators(gens)
    n = cone.dim
    if grading is None:
        grading = default_grading(list(cone.rays) or gens, n)
    for x in monoid_elements(cone, bound, grading, lattice):
        if not any(x):
            continue
        if decompose(x, gens, grading) is None:
            return False, x
    return True, None


def veronese_submonoid(s: AffineMonoid, lattice: Sequence[Sequence[int]], degree_bound: int = 12) -> AffineMonoid:
    """Generators of ``s cap L`` and whether ``L`` has finite index in ``Z^r``.

    For saturated ``s`` the generators are the Hilbert basis of ``cone(s)``
    relative to ``L``; otherwise elements of ``s cap L`` are enumerated up to
    ``degree_bound`` and reduced.
    """
    r = s.rank
    lat = [tuple(int(x) for x in v) for v in lattice]
    if any(len(v) != r for v in lat):
        raise DimensionError("sublattice generators have the wrong length")
    basis = _reduce_lattice(lat, r)
    finite = len(basis) == r and det(basis) != 0
    cone = s.cone()
    grading = default_grading(list(s.generators), r)
    if _is_saturated(s, cone, grading):
        hb = hilbert_basis(cone, grading, basis)
        return AffineMonoid(hb.elements, r, finite)
    # non-normal monoid: bounded enumeration of s cap L
    elems = [x for x in monoid_elements(cone, degree_bound, grading, basis)
             if any(x) and decompose(x, s.generators, grading) is not None]
    gens = []
    for x in elems:
        if decompose(x, gens, grading) is None:
            gens.append(x)
    return AffineMonoid(tuple(gens), r, finite)


def _is_saturated(s: AffineMonoid, cone: RationalCone, grading) -> bool:
    hb = hilbert_basis(cone, grading)
    return all(decompose(h, s.generators, grading) is not None for h in hb.elements)
