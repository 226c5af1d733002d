"""Diophantine approximation of quadratic-irrational points inside rational polytopes.

A point ``x = r + s*sqrt(d)`` with rational ``r, s`` moves along the single
irrational direction ``s``.  Continued-fraction convergents of one coordinate
give rational points on that line bracketing ``x`` from both sides; two of
them, close enough and in the same open face as ``x``, express ``x`` as a
convex combination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotContainedError
from .exact import Q, QuadScalar, common_denominator, fmt, sup_norm
from .polytope import RationalPolytope, face_of


class ConvergentList(list):
    """List of convergents; ``exhausted`` is set when the expansion terminated."""

    exhausted: bool = False


def _cf_terms_rational(x: Fraction):
    while True:
        a = x.numerator // x.denominator
        yield a
        rest = x - a
        if rest == 0:
            return
        x = 1 / rest


def _cf_terms_quad(x: QuadScalar):
    while True:
        a = x.__floor__()
        yield a
        rest = x - a
        if rest == 0:
            return
        x = rest.inverse()


def convergents(alpha, count: int) -> ConvergentList:
    """First ``count`` continued-fraction convergents of ``alpha``.

    Rational input stops at its finite expansion (``exhausted`` is True).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if isinstance(alpha, QuadScalar) and alpha.is_rational():
        alpha = alpha.a
    if isinstance(alpha, QuadScalar):
        terms = _cf_terms_quad(alpha)
    else:
        terms = _cf_terms_rational(Q(alpha))
    out = ConvergentList()
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a in terms:
        p0, p1 = a * p0 + p1, p0
        q0, q1 = a * q0 + q1, q0
        out.append(Fraction(p0, q0))
        if len(out) == count:
            return out
    out.exhausted = True
    return out


@dataclass(frozen=True)
class ApproximationResult:
    """Points ``x_i`` with multipliers ``k_i`` and convex weights."""

    points: tuple  # of (x_i: tuple of Fraction, k_i: int, weight)

    def to_json(self):
        def w(v):
            return v.to_json() if isinstance(v, QuadScalar) else fmt(v)
        return {"points": [{"x": [fmt(c) for c in x], "k": k, "weight": w(wt)}
                           for x, k, wt in self.points]}

    def violations(self, x: Sequence, k: int, eps) -> list:
        """Names of the approximation conditions that fail (empty when valid)."""
        bad = []
        total = sum((wt for _, _, wt in self.points), Fraction(0))
        if total != 1 or any(wt <= 0 for _, _, wt in self.points):
            bad.append("weights")
        combo = [sum((wt * xi[j] for xi, _, wt in self.points), Fraction(0)) for j in range(len(x))]
        if any(combo[j] != x[j] for j in range(len(x))):
            bad.append("combination")
        for xi, ki, _ in self.points:
            if ki % k:
                bad.append("divisibility")
            if any((Fraction(ki, k) * c).denominator != 1 for c in xi):
                bad.append("integrality")
            if not sup_norm([x[j] - xi[j] for j in range(len(x))]) < Q(eps) / ki:
                bad.append("distance")
        return bad


def _split(x: Sequence):
    """Rational parts, irrational parts and the field ``d`` (``None`` if rational)."""
    d = None
    r, s = [], []
    for c in x:
        if isinstance(c, QuadScalar):
            if c.b != 0:
                if d is not None and c.d != d:
                    c + QuadScalar(0, 1, d)  # raises FieldMismatchError
                d = c.d
            r.append(c.a)
            s.append(c.b)
        else:
            r.append(Q(c))
            s.append(Fraction(0))
    return r, s, d


def _multiplier(y: Sequence[Fraction], q: int) -> int:
    """Smallest positive ``c`` with ``q*c*y`` integral."""
    return common_denominator([q * v for v in y])


def approximate_in_polytope(p: RationalPolytope, x: Sequence, k: int, eps,
                            max_terms: int = 400) -> ApproximationResult:
    """Rational points ``x_i`` in the open face of ``p`` through ``x``.

    Each ``x_i`` comes with ``k_i`` divisible by ``k``, ``(k_i/k) x_i``
    integral and ``|x - x_i|_inf < eps/k_i``; ``x`` is a convex combination
    of the ``x_i``.
    """
    eps = Q(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if k < 1:
        raise ValueError("k must be a positive integer")
    x = list(x)
    if not p.contains(x):
        raise NotContainedError("x is not in the polytope")
    r, s, d = _split(x)
    if d is None:
        return ApproximationResult(((tuple(r), k * common_denominator(r), Fraction(1)),))
    tight = p.tight(x)
    j = max(range(len(s)), key=lambda i: (abs(s[i]), -i))
    xj = QuadScalar(r[j], s[j], d)
    cands = []
    for c in convergents(xj, max_terms):
        t = (c - r[j]) / s[j]
        y = tuple(r[i] + s[i] * t for i in range(len(r)))
        q = c.denominator
        ki = k * q * _multiplier(y, q)
        ok = (sup_norm([x[i] - y[i] for i in range(len(x))]) < eps / ki
              and p.contains(y) and p.tight(y) == tight)
        cands.append((c, y, ki, ok))
        if len(cands) >= 2:
            (c1, y1, k1, ok1), (c2, y2, k2, ok2) = cands[-2], cands[-1]
            if ok1 and ok2 and (c1 < xj) != (c2 < xj):
                w1 = (xj - c2) / (c1 - c2)
                w2 = 1 - w1
                return ApproximationResult(((y1, k1, w1), (y2, k2, w2)))
    raise RuntimeError("no bracketing pair found within the convergent budget")


def stays_in_face(p: RationalPolytope, x: Sequence, result: ApproximationResult) -> bool:
    """True iff every ``x_i`` lies in the minimal face of ``p`` containing ``x``."""
    carrier = face_of(p, x).carrier
    return all(carrier.contains(xi) for xi, _, _ in result.points)
