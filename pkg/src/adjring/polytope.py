"""Rational polytopes and polyhedral cones with exact dual description.

The workhorse is an integer double-description routine on homogenised
cones.  Every polytope is stored in a canonical form: sorted extreme points,
an echelonised basis of affine-hull equations, and irredundant facet
inequalities ``normal . x >= offset`` whose integer normals are reduced
orthogonally to the equation normals.  The norm used for distances is the
sup-norm throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from . import lp
from .errors import (DimensionError, EmptyPolytopeError, NotContainedError,
                     UnboundedError)
from .exact import (Q, common_denominator, dot, fmt, integerize, nullspace,
                    primitive, rank, rref, vsub)


# ---------------------------------------------------------------------------
# double description

def _idot(a, b):
    return sum(x * y for x, y in zip(a, b))


def double_description(ge: Sequence[Sequence[int]], eq: Sequence[Sequence[int]], dim: int):
    """Extreme rays and lineality basis of ``{x : g.x >= 0, e.x = 0}``.

    Integer input, primitive integer output.  Rays come back as
    ``(vector, frozenset of tight constraint indices)``; equalities are
    numbered after the inequalities.
    """
    cons = [tuple(int(x) for x in g) for g in ge]
    n_ge = len(cons)
    for e in eq:
        e = tuple(int(x) for x in e)
        cons.append(e)
        cons.append(tuple(-x for x in e))
    lin = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[tuple, frozenset]] = []
    done: list[int] = []
    for k, a in enumerate(cons):
        if not any(a):
            done.append(k)
            rays = [(r, z | {k}) for r, z in rays]
            continue
        vals = [_idot(a, l) for l in lin]
        piv = next((i for i, v in enumerate(vals) if v != 0), None)
        if piv is not None:
            l0, v0 = lin[piv], vals[piv]
            if v0 < 0:
                l0, v0 = tuple(-x for x in l0), -v0
            new_lin = []
            for i, l in enumerate(lin):
                if i == piv:
                    continue
                w = vals[i]
                new_lin.append(primitive(tuple(v0 * x - w * y for x, y in zip(l, l0))) if w else l)
            new_rays = []
            for r, z in rays:
                w = _idot(a, r)
                nr = primitive(tuple(v0 * x - w * y for x, y in zip(r, l0))) if w else r
                new_rays.append((nr, z | {k}))
            new_rays.append((primitive(l0), frozenset(done)))
            lin, rays = new_lin, new_rays
            done.append(k)
            continue
        pos, zer, neg = [], [], []
        for r, z in rays:
            w = _idot(a, r)
            if w > 0:
                pos.append((r, z, w))
            elif w < 0:
                neg.append((r, z, w))
            else:
                zer.append((r, z | {k}))
        need = dim - len(lin) - 2
        created = []
        if pos and neg:
            others = [z for _, z in rays]
            for rp, zp, wp in pos:
                for rn, zn, wn in neg:
                    common = zp & zn
                    if len(common) < need:
                        continue
                    adjacent = True
                    for z in others:
                        if z is not zp and z is not zn and common <= z:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    nr = primitive(tuple(wp * x - wn * y for x, y in zip(rn, rp)))
                    created.append((nr, common | {k}))
        rays = [(r, z) for r, z, _ in pos] + zer + created
        done.append(k)
    # map equality duplicates back to one index per equality
    out = []
    for r, z in rays:
        zz = set()
        for i in z:
            zz.add(i if i < n_ge else n_ge + (i - n_ge) // 2)
        out.append((r, frozenset(zz)))
    return out, lin


def _homogenize(normal, offset):
    """``n.x >= o``  ->  integer row of ``n.x - o t >= 0``."""
    return integerize(tuple(Q(x) for x in normal) + (-Q(offset),))


def polyhedron_vrep(ineqs, eqs, dim):
    """Vertices, recession rays and lineality of ``{n.x >= o} cap {n.x = o}``."""
    ge = [_homogenize(n, o) for n, o in ineqs]
    ge.append(tuple([0] * dim + [1]))
    eq = [_homogenize(n, o) for n, o in eqs]
    rays, lin = double_description(ge, eq, dim + 1)
    verts, rec = [], []
    for r, _ in rays:
        if r[-1] > 0:
            verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
        else:
            rec.append(tuple(r[:-1]))
    return verts, rec, [tuple(l[:-1]) for l in lin]


# ---------------------------------------------------------------------------
# canonical forms

def _affine_hull(points, dim):
    """Echelonised integer equations ``(normal, offset)`` of the affine hull."""
    rows = [tuple(p) + (Fraction(1),) for p in points]
    null = nullspace(rows, dim + 1)
    if not null:
        return []
    red, _ = rref(null)
    out = []
    for r in red:
        v = integerize(r)
        out.append((tuple(v[:-1]), Fraction(-v[-1])))
    return out


def _reduce_normal(normal, offset, eqs, gram_inv):
    """Project ``normal`` orthogonally off the equation normals."""
    if not eqs:
        return tuple(Q(x) for x in normal), Q(offset)
    rhs = [sum(Q(a) * b for a, b in zip(normal, en)) for en, _ in eqs]
    coef = [sum(gi * r for gi, r in zip(row, rhs)) for row in gram_inv]
    n = [Q(x) for x in normal]
    o = Q(offset)
    for c, (en, eo) in zip(coef, eqs):
        if c:
            n = [x - c * y for x, y in zip(n, en)]
            o -= c * eo
    return tuple(n), o


def _gram_inverse(eqs):
    from .exact import inverse
    if not eqs:
        return []
    g = [[sum(a * b for a, b in zip(e1, e2)) for e2, _ in eqs] for e1, _ in eqs]
    return inverse(g)


def _canonical(points, candidates, dim):
    """Canonical (vertices, eqs, ineqs) from a point set and facet candidates."""
    pts = sorted(set(tuple(Q(x) for x in p) for p in points))
    if not pts:
        return (), (), ()
    eqs = _affine_hull(pts, dim)
    affdim = dim - len(eqs)
    ginv = _gram_inverse(eqs)
    facets = {}
    for normal, offset in candidates:
        n, o = _reduce_normal(normal, offset, eqs, ginv)
        if not any(n):
            continue
        tight = [p for p in pts if dot(n, p) == o]
        if len(tight) < affdim:
            continue
        if affdim - 1 > 0:
            base = tight[0]
            if rank([vsub(t, base) for t in tight[1:]]) != affdim - 1:
                continue
        c = common_denominator(n + (o,))
        ni = [int(x * c) for x in n]
        g = 0
        for x in ni:
            g = math.gcd(g, x)
        key = tuple(x // g for x in ni)
        facets[key] = Fraction(o * c, g)
    ineqs = tuple(sorted(facets.items()))
    eq_norms = [en for en, _ in eqs]
    verts = []
    for p in pts:
        tight = [n for n, o in ineqs if dot(n, p) == o]
        if rank(tight + eq_norms) == dim:
            verts.append(p)
    return tuple(verts), tuple(eqs), ineqs


# ---------------------------------------------------------------------------
# polytopes

@dataclass(frozen=True)
class RationalPolytope:
    """Bounded rational polyhedron in canonical dual description.

    ``ineqs`` are facets ``normal . x >= offset``; ``eqs`` are affine-hull
    equations ``normal . x == offset``.  An empty polytope has no vertices
    and no constraints.
    """

    dim: int
    vertices: tuple
    eqs: tuple = ()
    ineqs: tuple = ()

    # -- construction ------------------------------------------------------
    @classmethod
    def from_hrep(cls, ineqs: Iterable, eqs: Iterable = (), dim: int | None = None) -> "RationalPolytope":
        ineqs = [(tuple(map(Q, n)), Q(o)) for n, o in ineqs]
        eqs = [(tuple(map(Q, n)), Q(o)) for n, o in eqs]
        if dim is None:
            allrows = ineqs + eqs
            if not allrows:
                raise DimensionError("cannot infer dimension from an empty H-representation")
            dim = len(allrows[0][0])
        for n, _ in ineqs + eqs:
            if len(n) != dim:
                raise DimensionError("inequality of wrong length")
        verts, rec, lin = polyhedron_vrep(ineqs, eqs, dim)
        if verts and (rec or lin):
            raise UnboundedError("H-representation describes an unbounded polyhedron")
        if not verts:
            return cls.empty(dim)
        v, e, i = _canonical(verts, ineqs + [(n, o) for n, o in eqs] + [(tuple(-x for x in n), -o) for n, o in eqs], dim)
        return cls(dim, v, e, i)

    @classmethod
    def from_vrep(cls, points: Iterable, dim: int | None = None) -> "RationalPolytope":
        pts = sorted(set(tuple(map(Q, p)) for p in points))
        if not pts:
            if dim is None:
                raise DimensionError("cannot infer dimension from no points")
            return cls.empty(dim)
        if dim is None:
            dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise DimensionError("points of different lengths")
        gens = [integerize(p + (Fraction(1),)) for p in pts]
        rays, _ = double_description(gens, [], dim + 1)
        cands = [(tuple(Fraction(x) for x in r[:-1]), Fraction(-r[-1])) for r, _ in rays]
        v, e, i = _canonical(pts, cands, dim)
        return cls(dim, v, e, i)

    @classmethod
    def empty(cls, dim: int) -> "RationalPolytope":
        return cls(dim, (), (), ())

    @classmethod
    def box(cls, lows: Sequence, highs: Sequence) -> "RationalPolytope":
        n = len(lows)
        ineqs = []
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            ineqs.append((e, Q(lows[i])))
            ineqs.append((tuple(-x for x in e), -Q(highs[i])))
        return cls.from_hrep(ineqs, dim=n)

    # -- queries -----------------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def affine_dim(self) -> int:
        return -1 if self.is_empty else self.dim - len(self.eqs)

    @property
    def hrep(self) -> list:
        """All constraints in ``>=`` form: facets, then each equation twice."""
        out = [(n, o) for n, o in self.ineqs]
        for n, o in self.eqs:
            out.append((n, o))
            out.append((tuple(-x for x in n), -o))
        return out

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise DimensionError(f"point has length {len(x)}, polytope lives in dimension {self.dim}")
        if self.is_empty:
            return False
        for n, o in self.eqs:
            if dot(n, x) != o:
                return False
        for n, o in self.ineqs:
            if dot(n, x) < o:
                return False
        return True

    def contains_polytope(self, other: "RationalPolytope") -> bool:
        return all(self.contains(v) for v in other.vertices)

    def same_set(self, other: "RationalPolytope") -> bool:
        return self.dim == other.dim and self.vertices == other.vertices

    def tight(self, x: Sequence) -> tuple:
        return tuple(i for i, (n, o) in enumerate(self.ineqs) if dot(n, x) == o)

    def minimize(self, c: Sequence):
        """Minimum of ``c . x`` over the polytope (attained at a vertex)."""
        if self.is_empty:
            raise EmptyPolytopeError("minimum over an empty polytope")
        return min(dot(c, v) for v in self.vertices)

    def argmin_face(self, c: Sequence) -> "RationalPolytope":
        val = self.minimize(c)
        return RationalPolytope.from_vrep([v for v in self.vertices if dot(c, v) == val], self.dim)

    def intersect(self, ineqs=(), eqs=()) -> "RationalPolytope":
        return RationalPolytope.from_hrep(list(self.hrep) + list(ineqs), eqs, self.dim)

    def lattice_points(self) -> list:
        """All integer points, sorted lexicographically."""
        if self.is_empty:
            return []
        lo = [math.ceil(min(v[i] for v in self.vertices)) for i in range(self.dim)]
        hi = [math.floor(max(v[i] for v in self.vertices)) for i in range(self.dim)]
        if any(l > h for l, h in zip(lo, hi)):
            return []
        return [p for p in product(*(range(l, h + 1) for l, h in zip(lo, hi))) if self.contains(p)]

    def has_lattice_point(self) -> bool:
        if any(all(x.denominator == 1 for x in v) for v in self.vertices):
            return True
        return bool(self.lattice_points())

    def scale(self, c) -> "RationalPolytope":
        c = Q(c)
        return RationalPolytope.from_vrep([tuple(c * x for x in v) for v in self.vertices], self.dim)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "hrep": [{"normal": [fmt(x) for x in n], "offset": fmt(o)} for n, o in self.ineqs],
            "eqs": [{"normal": [fmt(x) for x in n], "offset": fmt(o)} for n, o in self.eqs],
            "vrep": [[fmt(x) for x in v] for v in self.vertices],
        }

    @classmethod
    def from_json(cls, obj) -> "RationalPolytope":
        if "vrep" in obj and obj["vrep"]:
            return cls.from_vrep(obj["vrep"], obj.get("dim"))
        ineqs = [(r["normal"], r["offset"]) for r in obj.get("hrep", [])]
        eqs = [(r["normal"], r["offset"]) for r in obj.get("eqs", [])]
        if not ineqs and not eqs:
            return cls.empty(obj["dim"])
        return cls.from_hrep(ineqs, eqs, obj.get("dim"))


def dual_description(hrep=None, vrep=None, eqs=(), dim=None) -> RationalPolytope:
    """Completed dual pair from either description; idempotent."""
    if (hrep is None) == (vrep is None):
        raise ValueError("pass exactly one of hrep / vrep")
    if vrep is not None:
        return RationalPolytope.from_vrep(vrep, dim)
    if not hrep and not eqs:
        return RationalPolytope.empty(dim or 0)
    return RationalPolytope.from_hrep(hrep, eqs, dim)


def minkowski_sum(a: RationalPolytope, b: RationalPolytope) -> RationalPolytope:
    if a.dim != b.dim:
        raise DimensionError("Minkowski sum of polytopes in different dimensions")
    if a.is_empty or b.is_empty:
        return RationalPolytope.empty(a.dim)
    return RationalPolytope.from_vrep(
        [tuple(x + y for x, y in zip(u, v)) for u in a.vertices for v in b.vertices], a.dim)


# ---------------------------------------------------------------------------
# faces

@dataclass(frozen=True)
class Face:
    """Face cut out by ``tight_indices`` (indices into ``polytope.ineqs``)."""

    polytope: RationalPolytope
    tight_indices: tuple
    carrier: RationalPolytope


def face_from_tight(p: RationalPolytope, tight: Sequence[int]) -> Face:
    tight = tuple(sorted(tight))
    verts = [v for v in p.vertices if all(dot(p.ineqs[i][0], v) == p.ineqs[i][1] for i in tight)]
    return Face(p, tight, RationalPolytope.from_vrep(verts, p.dim))


def face_of(p: RationalPolytope, y: Sequence) -> Face:
    """Minimal face containing ``y`` (works for quadratic-field points too)."""
    if not p.contains(y):
        raise NotContainedError("point is not in the polytope")
    return face_from_tight(p, p.tight(y))


def extreme_points(p: RationalPolytope) -> list:
    if p.is_empty:
        raise EmptyPolytopeError("an empty polytope has no extreme points")
    return list(p.vertices)


def facets(p: RationalPolytope) -> list:
    return [face_from_tight(p, (i,)) for i in range(len(p.ineqs))]


def faces(p: RationalPolytope) -> list:
    """All nonempty faces (including ``p``), enumerated from vertex incidences."""
    if p.is_empty:
        return []
    seen = {}
    frontier = [()]
    while frontier:
        nxt = []
        for t in frontier:
            f = face_from_tight(p, t)
            key = f.carrier.vertices
            if not key or key in seen:
                continue
            seen[key] = f
            closure = tuple(i for i, (n, o) in enumerate(p.ineqs)
                            if all(dot(n, v) == o for v in key))
            for i in range(len(p.ineqs)):
                if i not in closure:
                    nxt.append(tuple(sorted(set(closure) | {i})))
        frontier = nxt
    return list(seen.values())


# ---------------------------------------------------------------------------
# sup-norm distances and the local polytopality radius

def sup_distance_to_hull(x: Sequence, points: Sequence[Sequence]):
    """Exact ``min_{y in conv(points)} ||x - y||_inf`` via a small LP."""
    k = len(points)
    n = len(x)
    # variables: lambda_1..lambda_k, s
    c = [0] * k + [1]
    a_eq = [[1] * k + [0]]
    b_eq = [1]
    a_ge, b_ge = [], []
    for i in range(n):
        a_ge.append([points[j][i] for j in range(k)] + [1])
        b_ge.append(x[i])
        a_ge.append([-points[j][i] for j in range(k)] + [1])
        b_ge.append(-x[i])
    res = lp.minimize(c, a_eq, b_eq, a_ge, b_ge)
    return res.value


def sup_distance_to_cone(x: Sequence, gens: Sequence[Sequence]):
    """Exact ``min_{y in cone(gens)} ||x - y||_inf``."""
    k = len(gens)
    n = len(x)
    c = [0] * k + [1]
    a_ge, b_ge = [], []
    for i in range(n):
        a_ge.append([gens[j][i] for j in range(k)] + [1])
        b_ge.append(x[i])
        a_ge.append([-gens[j][i] for j in range(k)] + [1])
        b_ge.append(-x[i])
    return lp.minimize(c, (), (), a_ge, b_ge).value


def local_delta(p: RationalPolytope, x: Sequence):
    """Radius from the local polytopality criterion at ``x``.

    The minimum sup-norm distance from ``x`` to the faces of ``p`` that miss
    ``x``.  Every such face lies in a facet missing ``x``, so facets suffice.
    Returns ``None`` when no face misses ``x`` (``p`` is the single point).
    """
    if not p.contains(x):
        raise NotContainedError("local_delta needs a point of the polytope")
    best = None
    for i, (n, o) in enumerate(p.ineqs):
        if dot(n, x) == o:
            continue
        verts = [v for v in p.vertices if dot(n, v) == o]
        d = sup_distance_to_hull(x, verts)
        if best is None or d < best:
            best = d
    return best


def open_segment_meets(p: RationalPolytope, x: Sequence, y: Sequence) -> bool:
    """Whether the open segment ``(x, y)`` meets ``p``."""
    iv = _segment_interval(p.ineqs, p.eqs, x, y)
    if iv is None:
        return False
    lo, hi = iv
    if lo < hi:
        return hi > 0 and lo < 1
    return 0 < lo < 1


def _segment_interval(ineqs, eqs, x, y):
    """Closed parameter interval ``{t in [0,1] : x + t(y-x) satisfies all}``."""
    lo, hi = Fraction(0), Fraction(1)
    d = [Q(b) - Q(a) for a, b in zip(x, y)]
    for n, o in eqs:
        a0 = dot(n, x) - o
        a1 = dot(n, d)
        if a1 == 0:
            if a0 != 0:
                return None
        else:
            t = -a0 / a1
            lo, hi = max(lo, t), min(hi, t)
    for n, o in ineqs:
        a0 = dot(n, x) - o
        a1 = dot(n, d)
        if a1 == 0:
            if a0 < 0:
                return None
        elif a1 > 0:
            lo = max(lo, -a0 / a1)
        else:
            hi = min(hi, -a0 / a1)
        if lo > hi:
            return None
    return (lo, hi) if lo <= hi else None


# ---------------------------------------------------------------------------
# projection

def fourier_motzkin(ineqs, eqs, dim, eliminate: Iterable[int]):
    """Eliminate coordinates; returns ``(ineqs, eqs)`` in the kept coordinates.

    Equations containing an eliminated variable are used for substitution
    first; the remaining variables are removed by pairing positive and
    negative occurrences.
    """
    rows = [(list(map(Q, n)), Q(o)) for n, o in ineqs]
    erows = [(list(map(Q, n)), Q(o)) for n, o in eqs]
    elim = sorted(set(eliminate))
    for j in elim:
        piv = next((r for r in erows if r[0][j] != 0), None)
        if piv is not None:
            erows.remove(piv)
            pn, po = piv
            pj = pn[j]

            def sub(row):
                n, o = row
                f = n[j] / pj
                if not f:
                    return row
                return [a - f * b for a, b in zip(n, pn)], o - f * po
            rows = [sub(r) for r in rows]
            erows = [sub(r) for r in erows]
            continue
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        new = [r for r in rows if r[0][j] == 0]
        for pn, po in pos:
            for nn, no in neg:
                a, b = pn[j], -nn[j]
                n = [b * x + a * y for x, y in zip(pn, nn)]
                new.append((n, b * po + a * no))
        # drop duplicates and trivially true rows to keep growth in check
        uniq = {}
        infeasible = False
        for n, o in new:
            if not any(n):
                infeasible = infeasible or o > 0
                continue
            key, oo = _normalize_row(n, o)
            if key not in uniq or uniq[key] < oo:
                uniq[key] = oo
        rows = [(list(map(Fraction, k)), o) for k, o in uniq.items()]
        if infeasible:
            rows.append(([Fraction(0)] * dim, Fraction(1)))
    keep = [i for i in range(dim) if i not in set(elim)]
    out_i = [(tuple(n[i] for i in keep), o) for n, o in rows]
    out_e = [(tuple(n[i] for i in keep), o) for n, o in erows]
    return out_i, out_e


def _normalize_row(n, o):
    """Primitive integer normal with the offset rescaled by the same factor."""
    c = common_denominator(list(n))
    ni = [int(x * c) for x in n]
    g = 0
    for x in ni:
        g = math.gcd(g, x)
    return tuple(x // g for x in ni), Q(o) * c / g


def project(p: RationalPolytope, keep: Sequence[int]) -> RationalPolytope:
    """Exact coordinate projection onto ``keep`` (Fourier-Motzkin)."""
    keep = list(keep)
    if p.is_empty:
        return RationalPolytope.empty(len(keep))
    elim = [i for i in range(p.dim) if i not in set(keep)]
    ineqs, eqs = fourier_motzkin(p.ineqs, p.eqs, p.dim, elim)
    # reorder to the requested coordinate order
    kept_sorted = [i for i in range(p.dim) if i in set(keep)]
    perm = [kept_sorted.index(i) for i in keep]
    ineqs = [(tuple(n[k] for k in perm), o) for n, o in ineqs]
    eqs = [(tuple(n[k] for k in perm), o) for n, o in eqs]
    if not ineqs and not eqs:
        return RationalPolytope.from_vrep([tuple(v[i] for i in keep) for v in p.vertices], len(keep))
    return RationalPolytope.from_hrep(ineqs, eqs, len(keep))


def project_vertices(p: RationalPolytope, keep: Sequence[int]) -> RationalPolytope:
    """Projection computed from the V-representation."""
    return RationalPolytope.from_vrep([tuple(v[i] for i in keep) for v in p.vertices], len(keep))


# ---------------------------------------------------------------------------
# cones

@dataclass(frozen=True)
class RationalCone:
    """Polyhedral cone ``{x : n.x >= 0 (ineqs), n.x = 0 (eqs)}``.

    ``rays`` are the primitive extreme rays (irredundant); ``lineality`` is
    nonempty exactly when the cone is not pointed.
    """

    dim: int
    rays: tuple
    lineality: tuple = ()
    eqs: tuple = ()
    ineqs: tuple = ()

    @classmethod
    def from_generators(cls, gens: Iterable, dim: int | None = None) -> "RationalCone":
        gens = [integerize(tuple(map(Q, g))) for g in gens if any(Q(x) for x in g)]
        if dim is None:
            if not gens:
                raise DimensionError("cannot infer dimension from no generators")
            dim = len(gens[0])
        if not gens:
            return cls(dim, (), (), tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)), ())
        rays, lin = double_description(gens, [], dim)
        eqs = []
        for l in lin:
            eqs.append(l)
        return cls._from_halfspaces([r for r, _ in rays], eqs, dim)

    @classmethod
    def from_inequalities(cls, ineqs: Iterable, eqs: Iterable = (), dim: int | None = None) -> "RationalCone":
        ineqs = [integerize(tuple(map(Q, n))) for n in ineqs]
        eqs = [integerize(tuple(map(Q, n))) for n in eqs]
        if dim is None:
            dim = len((ineqs + eqs)[0])
        return cls._from_halfspaces(ineqs, eqs, dim)

    @classmethod
    def _from_halfspaces(cls, ineqs, eqs, dim):
        rays, lin = double_description(ineqs, eqs, dim)
        rays = sorted(r for r, _ in rays)
        lin = _echelon_int(lin)
        # canonical facets: dual of (rays, lineality)
        if rays or lin:
            drays, dlin = double_description(rays, lin, dim)
        else:
            drays, dlin = [], [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        ceqs = _echelon_int(dlin)
        facets = set()
        if ceqs:
            ginv = _gram_inverse([(e, 0) for e in ceqs])
        for r, _ in drays:
            if ceqs:
                n, _ = _reduce_normal(r, 0, [(e, 0) for e in ceqs], ginv)
            else:
                n = r
            if any(n):
                facets.add(integerize(n))
        return cls(dim, tuple(rays), tuple(lin), tuple(ceqs), tuple(sorted(facets)))

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def cone_dim(self) -> int:
        return self.dim - len(self.eqs)

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise DimensionError("dimension mismatch")
        return all(dot(e, x) == 0 for e in self.eqs) and all(dot(n, x) >= 0 for n in self.ineqs)

    def interior_contains(self, x: Sequence) -> bool:
        return all(dot(e, x) == 0 for e in self.eqs) and all(dot(n, x) > 0 for n in self.ineqs)

    def hits(self, x: Sequence, y: Sequence):
        return segment_cone_hits(self, x, y)

    def to_json(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays],
                "lineality": [list(l) for l in self.lineality],
                "hrep": [list(n) for n in self.ineqs], "eqs": [list(e) for e in self.eqs]}


def _echelon_int(vectors):
    if not vectors:
        return []
    red, _ = rref([tuple(map(Q, v)) for v in vectors])
    return [integerize(r) for r in red]


def segment_cone_hits(d: RationalCone, x: Sequence, y: Sequence):
    """Closed interval of ``t in [0,1]`` with ``x + t(y-x)`` in ``d``, or ``None``."""
    return _segment_interval([(n, 0) for n in d.ineqs], [(e, 0) for e in d.eqs], x, y)


def cone_over(p: RationalPolytope) -> RationalCone:
    """``R_+ p``."""
    return RationalCone.from_generators(p.vertices, p.dim)


def cone_local_delta(c: RationalCone, x: Sequence):
    """Cone version of :func:`local_delta` (``None`` if every face contains ``x``)."""
    if not c.contains(x):
        raise NotContainedError("point is not in the cone")
    best = None
    for n in c.ineqs:
        if dot(n, x) == 0:
            continue
        gens = [r for r in c.rays if dot(n, r) == 0]
        gens += list(c.lineality) + [tuple(-v for v in l) for l in c.lineality]
        if not gens:
            d = max(abs(Q(v)) for v in x)
        else:
            d = sup_distance_to_cone(x, gens)
        if best is None or d < best:
            best = d
    return best
