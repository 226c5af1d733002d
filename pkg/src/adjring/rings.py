"""Divisorial section rings on toric varieties.

A monomial of ``R(X; D_1, ..., D_l)`` is a pair ``(m, u)`` with ``m`` in the
grading monoid and ``u`` a lattice point of ``P_{floor(sum m_i D_i)}``;
multiplication adds both parts.  Generation questions therefore become
questions about sums of lattice points.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import HypothesisError, PositivityError
from .exact import qvec
from .monoid import (AffineMonoid, decompose, hilbert_basis,
                     monoid_elements, veronese_submonoid)
from .polytope import RationalCone, RationalPolytope
from .pwa import lower_envelope_extension
from .toric import (Fan, TorusDivisor, order_along, restrict_system,
                    section_polytope, tightness)


def total_degree(m: Sequence) -> int:
    return sum(m)


class SectionRing:
    """``R = sum_m H^0(X, floor(sum m_i D_i))`` over ``cone cap lattice``.

    The grading monoid defaults to ``N^l``; ``cone`` must lie in the
    nonnegative orthant so that total degree is a positive grading.
    """

    def __init__(self, divisors: Sequence[TorusDivisor], cone: RationalCone | None = None,
                 lattice: Sequence | None = None):
        self.divisors = tuple(divisors)
        if not self.divisors:
            raise ValueError("at least one divisor is required")
        self.fan: Fan = self.divisors[0].fan
        self.rank = len(self.divisors)
        ell = self.rank
        self.cone = cone or RationalCone.from_generators(
            [tuple(int(i == j) for j in range(ell)) for i in range(ell)], ell)
        self.lattice = None if lattice is None else tuple(tuple(int(x) for x in v) for v in lattice)
        self._grading = tuple([1] * ell)
        self._pieces = {}

    def __repr__(self):
        return f"SectionRing({self.fan.name or 'fan'}, {[d.to_json() for d in self.divisors]})"

    def in_monoid(self, m: Sequence) -> bool:
        m = tuple(int(x) for x in m)
        if len(m) != self.rank or not self.cone.contains(m):
            return False
        if self.lattice is None:
            return True
        from .monoid import _in_lattice, _reduce_lattice
        from .exact import transpose
        return _in_lattice(transpose(_reduce_lattice(self.lattice, self.rank)), m)

    def divisor_at(self, m: Sequence) -> TorusDivisor:
        out = self.fan.zero()
        for mi, d in zip(m, self.divisors):
            out = out + d * mi
        return out

    def graded_piece(self, m: Sequence) -> tuple:
        m = tuple(int(x) for x in m)
        if m not in self._pieces:
            if not self.in_monoid(m):
                raise ValueError(f"{m} is not in the grading monoid")
            p = section_polytope(self.divisor_at(m).floor())
            self._pieces[m] = tuple(tuple(int(x) for x in u) for u in p.lattice_points())
        return self._pieces[m]

    def degrees(self, bound: int) -> list:
        """Monoid elements of total degree at most ``bound`` (graded-lex, without 0)."""
        out = monoid_elements(self.cone, bound, self._grading, self.lattice)
        return [tuple(int(x) for x in m) for m in out if any(m)]

    def monomials(self, bound: int) -> list:
        return [(m, u) for m in self.degrees(bound) for u in self.graded_piece(m)]


@dataclass(frozen=True)
class GeneratorSet:
    elements: tuple  # of (m, u)
    bound: int
    verdict: bool

    def by_degree(self) -> dict:
        out = {}
        for m, u in self.elements:
            out.setdefault(total_degree(m), []).append((m, u))
        return out

    def to_json(self):
        return {"bound": self.bound, "verdict": self.verdict,
                "elements": [{"degree": list(m), "point": list(u)} for m, u in self.elements]}


def _splits(r: SectionRing, m: tuple, lower: list):
    for m1 in lower:
        if total_degree(m1) >= total_degree(m):
            break
        m2 = tuple(a - b for a, b in zip(m, m1))
        if any(x < 0 for x in m2) or not any(m2) or not r.in_monoid(m2):
            continue
        yield m1, m2


def _decomposable(r: SectionRing, m: tuple, u: tuple, lower: list) -> bool:
    for m1, m2 in _splits(r, m, lower):
        p2 = set(r.graded_piece(m2))
        for u1 in r.graded_piece(m1):
            if tuple(a - b for a, b in zip(u, u1)) in p2:
                return True
    return False


def minimal_generators(r: SectionRing, bound: int) -> GeneratorSet:
    """Greedy ascent by total degree.

    A monomial is a generator when it is not a product of two monomials of
    positive degree.  The verdict is True when no generator appears in
    degree above ``bound / 2``.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    degs = r.degrees(bound)
    gens = []
    for idx, m in enumerate(degs):
        lower = degs[:idx]
        for u in r.graded_piece(m):
            if not _decomposable(r, m, u, lower):
                gens.append((m, u))
    late = any(2 * total_degree(m) > bound for m, _ in gens)
    return GeneratorSet(tuple(gens), bound, not late)


def verify_generation(r: SectionRing, g, bound: int):
    """``(True, None)`` if every monomial of degree <= bound is a product of ``g``.

    Otherwise ``(False, (m, u))`` with the first failure in graded-lex order.
    """
    elements = g.elements if isinstance(g, GeneratorSet) else tuple(g)
    elements = [(tuple(m), tuple(u)) for m, u in elements if any(m)]
    reach = set()
    frontier = set()
    for m, u in elements:
        if total_degree(m) <= bound:
            frontier.add((m, u))
    while frontier:
        reach |= frontier
        new = set()
        for m, u in frontier:
            for gm, gu in elements:
                mm = tuple(a + b for a, b in zip(m, gm))
                if total_degree(mm) > bound:
                    continue
                item = (mm, tuple(a + b for a, b in zip(u, gu)))
                if item not in reach:
                    new.add(item)
        frontier = new
    for m in r.degrees(bound):
        for u in r.graded_piece(m):
            if (m, u) not in reach:
                return False, (m, u)
    return True, None


# ---------------------------------------------------------------------------
# restriction and Veronese subrings

class RestrictedRing:
    """``res_S R``: each piece is the restriction of the matching system to ``D_s``."""

    def __init__(self, base: SectionRing, s: int):
        self.base = base
        self.s = s
        self._cache = {}

    def piece(self, m: Sequence):
        m = tuple(int(x) for x in m)
        if m not in self._cache:
            self._cache[m] = restrict_system(self.base.divisor_at(m).floor(), self.s)
        return self._cache[m]

    def piece_dim(self, m: Sequence) -> int:
        return self.piece(m).dim

    def surjection(self, m: Sequence) -> dict:
        """Monomials of the base piece that survive restriction (by lattice point)."""
        m = tuple(int(x) for x in m)
        d = self.base.divisor_at(m).floor()
        return {u: tightness(d, u, self.s) == 0 for u in self.base.graded_piece(m)}


def restricted_ring(r: SectionRing, s: int) -> RestrictedRing:
    if not 0 <= s < r.fan.n_rays:
        raise ValueError(f"{s} is not a ray index")
    return RestrictedRing(r, s)


def veronese_ring(r: SectionRing, lattice: Sequence[Sequence[int]]) -> SectionRing:
    """Subring graded by ``monoid cap L``; regraded when that monoid is free."""
    ell = r.rank
    sub = veronese_submonoid(AffineMonoid(tuple(r.cone.rays), ell), lattice)
    if not sub.finite_index:
        raise HypothesisError("the sublattice has infinite index", witness=[list(v) for v in lattice])
    gens = list(sub.generators)
    if len(gens) == ell and r.lattice is None:
        from .exact import det
        if abs(det(gens)) == abs(det(_basis(lattice, ell))) and _is_orthant(r.cone):
            return SectionRing([sum((r.divisors[i] * g[i] for i in range(ell)), r.fan.zero()) for g in gens])
    return SectionRing(r.divisors, r.cone, lattice)


def _basis(lattice, ell):
    from .monoid import _reduce_lattice
    return _reduce_lattice([tuple(int(x) for x in v) for v in lattice], ell)


def _is_orthant(c: RationalCone) -> bool:
    ell = c.dim
    return sorted(c.rays) == sorted(tuple(int(i == j) for j in range(ell)) for i in range(ell))


# ---------------------------------------------------------------------------
# descent along invariant prime divisors

def _section_cone(fan: Fan, primes: Sequence[int], cone: RationalCone, tight: int | None = None) -> RationalCone:
    """Cone of ``(alpha, u)`` with ``alpha`` in ``cone`` and ``u`` in ``P_{sum alpha_i S_i}``."""
    p = len(primes)
    n = fan.dim
    ineqs = [tuple(Fraction(x) for x in row) + (Fraction(0),) * n for row in cone.ineqs]
    eqs = [tuple(Fraction(x) for x in row) + (Fraction(0),) * n for row in cone.eqs]
    for rho, v in enumerate(fan.rays):
        row = tuple(Fraction(int(primes[i] == rho)) for i in range(p)) + qvec(v)
        if rho == tight:
            eqs.append(row)
        else:
            ineqs.append(row)
    return RationalCone.from_inequalities(ineqs, eqs, p + n)


def check_descent_threshold(pieces: Sequence[RationalCone], cone: RationalCone, m_threshold: int):
    """Machine check that ``alpha in C_j``, ``deg alpha >= M`` imply ``alpha - e_j in C``.

    Degrees in ``[M, M + h)`` suffice, ``h`` being the largest Hilbert-basis
    degree of ``C_j``: every larger element is such an element plus a
    Hilbert-basis element.  Raises :class:`HypothesisError` with the witness.
    """
    ell = cone.dim
    ones = tuple([1] * ell)
    for j, cj in enumerate(pieces):
        hb = hilbert_basis(cj, ones).elements
        h = max(total_degree(e) for e in hb) if hb else 1
        for alpha in monoid_elements(cj, m_threshold + h - 1, ones):
            if total_degree(alpha) < m_threshold:
                continue
            shifted = tuple(a - int(i == j) for i, a in enumerate(alpha))
            if not cone.contains(shifted):
                raise HypothesisError(f"alpha={list(alpha)} in piece {j} but alpha - e_{j} leaves the cone",
                                      witness=tuple(int(x) for x in alpha))
    return True


@dataclass(frozen=True)
class DescentResult:
    generators: GeneratorSet
    base_set: tuple
    restricted_sets: tuple
    expressions: dict

    def to_json(self):
        return {"generators": self.generators.to_json(),
                "restricted_sets": [[{"degree": list(m), "point": list(u)} for m, u in h] for h in self.restricted_sets]}


def cox_descent_generators(r: SectionRing, primes: Sequence[int], pieces: Sequence[RationalCone],
                           m_threshold: int, bound: int, restricted_generators: Sequence | None = None) -> DescentResult:
    """Generating set of the ring spanned by ``R(X, S)`` and the sections ``sigma_j``.

    ``r`` must be graded by ``alpha`` with ``D_alpha = sum alpha_i S_i`` for the
    prime divisors ``S_i = D_{primes[i]}``; ``pieces[j]`` is the part of the
    decomposition attached to ``S_j``.  Every monomial of degree <= ``bound``
    is reduced over ``H = {sigma_j} + H_j + (monomials of degree <= M)`` by the
    descent: a monomial tight along ``S_j`` is a product of elements of
    ``H_j``; any other one is ``sigma_j`` times a monomial of lower degree.
    """
    fan = r.fan
    p = len(primes)
    for i, d in enumerate(r.divisors):
        if d != fan.prime(primes[i]):
            raise ValueError("ring divisors must be the listed prime divisors")
    check_descent_threshold(pieces, r.cone, m_threshold)
    n = fan.dim
    grading = tuple([1] * p) + tuple([0] * n)
    if restricted_generators is None:
        restricted_generators = []
        for j, cj in enumerate(pieces):
            tc = _section_cone(fan, primes, cj, tight=primes[j])
            hb = hilbert_basis(tc, grading).elements
            restricted_generators.append(tuple((e[:p], e[p:]) for e in hb))
    hsets = [tuple((tuple(m), tuple(u)) for m, u in h) for h in restricted_generators]
    sigmas = [(tuple(int(i == j) for i in range(p)), tuple([0] * n)) for j in range(p)]
    low = r.monomials(m_threshold)
    base = set(sigmas) | set(low)
    for h in hsets:
        base |= set(h)
    base_sorted = tuple(sorted(base, key=lambda mu: (total_degree(mu[0]), mu[0], mu[1])))
    exprs = {}

    def descend(m, u):
        key = (m, u)
        if key in exprs:
            return exprs[key]
        if key in base:
            out = [key]
        else:
            j = next((j for j, cj in enumerate(pieces) if cj.contains(m)), None)
            if j is None:
                raise HypothesisError("degree lies in no piece of the decomposition", witness=m)
            d = r.divisor_at(m)
            if tightness(d, u, primes[j]) == 0:
                flat = decompose(m + u, [a + b for a, b in hsets[j]], grading)
                if flat is None:
                    raise HypothesisError("restricted generators do not generate", witness=(m, u))
                out = [(e[:p], e[p:]) for e in flat]
            else:
                mm = tuple(a - int(i == j) for i, a in enumerate(m))
                out = [sigmas[j]] + descend(mm, u)
        exprs[key] = out
        return out

    ok = True
    for m, u in r.monomials(bound):
        expr = descend(m, u)
        sm = tuple(sum(e[0][i] for e in expr) for i in range(p))
        su = tuple(sum(e[1][i] for e in expr) for i in range(n))
        ok &= (sm, su) == (m, u)
    gens = GeneratorSet(base_sorted, bound, ok)
    return DescentResult(gens, base_sorted, tuple(hsets), exprs)


# ---------------------------------------------------------------------------
# the Fix function on a polytope of divisors

def integral_fix(d: TorusDivisor, rho: int) -> int:
    """``mult_rho Fix|d|`` for integral ``d`` by slicing along ``<u, v_rho>``."""
    p = section_polytope(d)
    if p.is_empty:
        raise PositivityError("|d| is empty")
    v = d.fan.rays[rho]
    lo = math.ceil(p.minimize(v))
    hi = math.floor(-p.minimize(tuple(-x for x in v)))
    for t in range(lo, hi + 1):
        verts_hit = [w for w in p.vertices if sum(a * b for a, b in zip(v, w)) == t]
        if any(all(x.denominator == 1 for x in w) for w in verts_hit):
            return t + int(d.coeffs[rho])
        sl = p.intersect(eqs=[(v, t)])
        if not sl.is_empty and sl.has_lattice_point():
            return t + int(d.coeffs[rho])
    raise PositivityError("|d| has no integral member")


@dataclass(frozen=True)
class FixFunction:
    vertices: tuple  # the divisors spanning the polytope
    functions: tuple  # (ray, PiecewiseAffineFn over lifted coefficient vectors)
    k: int | None

    def value(self, rho: int, d: TorusDivisor):
        f = dict(self.functions)[rho]
        return f(tuple(d.coeffs) + (Fraction(1),))

    def to_json(self):
        return {"k": self.k if self.k is not None else "not found",
                "functions": [{"ray": rho, "cells": f.to_json()} for rho, f in self.functions]}


def _barycentric_samples(vertices: Sequence[TorusDivisor], rho: int):
    """Vertices of ``{(lambda, u)}`` mapped to ``(D, tightness along rho)``."""
    fan = vertices[0].fan
    ell = len(vertices)
    n = fan.dim
    ineqs = []
    for i in range(ell):
        ineqs.append((tuple(Fraction(int(i == j)) for j in range(ell)) + (Fraction(0),) * n, Fraction(0)))
    for r_, v in enumerate(fan.rays):
        row = tuple(vertices[i].coeffs[r_] for i in range(ell)) + qvec(v)
        ineqs.append((row, Fraction(0)))
    eqs = [(tuple([Fraction(1)] * ell) + (Fraction(0),) * n, Fraction(1))]
    q = RationalPolytope.from_hrep(ineqs, eqs, ell + n)
    out = []
    for w in q.vertices:
        lam, u = w[:ell], w[ell:]
        d = sum((vertices[i] * lam[i] for i in range(ell)), fan.zero())
        out.append((tuple(d.coeffs), tightness(d, u, rho)))
    return out


def _lifted_domain(vertices):
    return RationalPolytope.from_vrep([tuple(v.coeffs) for v in vertices])


def fix_function(vertices: Sequence[TorusDivisor], rays: Sequence[int] | None = None,
                 k_max: int = 120, m_max: int = 60, samples: int = 20, seed: int = 0) -> FixFunction:
    """``D -> mult_rho Fix(D)`` on ``conv(vertices)`` and a uniform multiplier ``k``.

    ``k`` is the least value up to ``k_max`` with ``Fix(D) = (1/m) Fix|mD|``
    for every tested ``D`` and every ``m <= m_max`` making ``(m/k) D``
    integral; ``None`` if there is none.
    """
    vertices = list(vertices)
    for v in vertices:
        if section_polytope(v).is_empty:
            raise PositivityError("a vertex divisor has empty Q-linear system")
    fan = vertices[0].fan
    if rays is None:
        rays = range(fan.n_rays)
    dom = _lifted_domain(vertices)
    funcs = []
    for rho in rays:
        pts = _barycentric_samples(vertices, rho)
        uniq = {}
        for x, f in pts:
            uniq[x] = min(f, uniq.get(x, f))
        c = max(uniq.values())
        pw = lower_envelope_extension(dom, sorted(uniq.items()), c, lift=True)
        funcs.append((rho, pw))
    tested = _test_divisors(vertices, samples, seed)
    k = uniform_multiplier(tested, list(rays), k_max, m_max)
    return FixFunction(tuple(vertices), tuple(funcs), k)


def _test_divisors(vertices, samples, seed):
    fan = vertices[0].fan
    rng = random.Random(seed)
    out = list(vertices)
    for _ in range(samples):
        w = [rng.randint(0, 3) for _ in vertices]
        if not any(w):
            w[0] = 1
        tot = sum(w)
        out.append(sum((vertices[i] * Fraction(w[i], tot) for i in range(len(vertices))), fan.zero()))
    return out


def uniform_multiplier(tested: Sequence[TorusDivisor], rays: Sequence[int], k_max: int = 120, m_max: int = 60):
    asym = {}
    for d in tested:
        asym[d] = [order_along(d, r) for r in rays]
    for k in range(1, k_max + 1):
        good = True
        for d in tested:
            ms = [m for m in range(1, m_max + 1) if (d * Fraction(m, k)).is_integral]
            if not ms:
                good = False
                break
            for m in ms:
                md = d * m
                if any(Fraction(integral_fix(md, r), m) != a for r, a in zip(rays, asym[d])):
                    good = False
                    break
            if not good:
                break
        if good:
            return k
    return None
