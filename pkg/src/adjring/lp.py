"""Small dense exact simplex solver (two-phase, Bland's rule).

Desk-scale only: a few dozen rows and columns of Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Q


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: tuple | None = None


def _pivot(t, r, c):
    pv = t[r][c]
    t[r] = [x / pv for x in t[r]]
    row = t[r]
    for i in range(len(t)):
        if i != r:
            f = t[i][c]
            if f:
                t[i] = [x - f * y for x, y in zip(t[i], row)]


def _simplex(t, basis, ncols, allowed):
    """Minimise the objective in the last row of tableau ``t`` (reduced costs)."""
    m = len(t) - 1
    while True:
        obj = t[m]
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = t[i][enter]
            if a > 0:
                ratio = t[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        r = best[1]
        _pivot(t, r, enter)
        basis[r] = enter


def minimize(c: Sequence, a_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
             a_ge: Sequence[Sequence] = (), b_ge: Sequence = ()) -> LPResult:
    """Minimise ``c.x`` over ``x >= 0`` with ``a_eq x = b_eq`` and ``a_ge x >= b_ge``."""
    n = len(c)
    rows = [list(map(Q, r)) for r in a_eq] + [list(map(Q, r)) for r in a_ge]
    rhs = [Q(x) for x in b_eq] + [Q(x) for x in b_ge]
    n_ge = len(a_ge)
    n_eq = len(a_eq)
    m = len(rows)
    # surplus columns for >= rows
    for i in range(m):
        rows[i] += [Fraction(0)] * n_ge
        if i >= n_eq:
            rows[i][n + (i - n_eq)] = Fraction(-1)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    nv = n + n_ge
    # artificials
    t = []
    for i in range(m):
        art = [Fraction(int(j == i)) for j in range(m)]
        t.append(rows[i] + art + [rhs[i]])
    total = nv + m
    basis = [nv + i for i in range(m)]
    phase1 = [Fraction(0)] * nv + [Fraction(1)] * m + [Fraction(0)]
    for i in range(m):
        phase1 = [x - y for x, y in zip(phase1, t[i])]
    t.append(phase1)
    _simplex(t, basis, total, [True] * total)
    if t[m][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= nv:
            j = next((j for j in range(nv) if t[i][j] != 0), None)
            if j is not None:
                _pivot(t, i, j)
                basis[i] = j
    cost = [Q(x) for x in c] + [Fraction(0)] * n_ge + [Fraction(0)] * m + [Fraction(0)]
    for i in range(m):
        cb = cost[basis[i]]
        if cb:
            cost = [x - cb * y for x, y in zip(cost, t[i])]
    t[m] = cost
    allowed = [True] * nv + [False] * m
    if not _simplex(t, basis, total, allowed):
        return LPResult("unbounded")
    x = [Fraction(0)] * total
    for i in range(m):
        x[basis[i]] = t[i][-1]
    xs = tuple(x[:n])
    value = sum((Q(ci) * xi for ci, xi in zip(c, xs)), Fraction(0))
    return LPResult("optimal", value, xs)
