"""Smooth complete toric varieties and their torus-invariant Q-divisors.

A divisor ``D = sum a_rho D_rho`` has section polytope
``P_D = {u : <u, v_rho> >= -a_rho}``; its lattice points index a monomial
basis of ``H^0(X, O(D))`` and its real points stand for the invariant members
of ``|D|_R``.  Fixed parts, base loci, asymptotic orders and the adjoint
polytopes of a boundary box are all read off faces of such polytopes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import (BaseLocusError, DimensionError, FanError, PositivityError)
from .exact import (Q, common_denominator, det, dot, fmt, inverse, lcm, matvec,
                    primitive, qvec, solve_linear, transpose,
                    unimodular_completion)
from .polytope import RationalPolytope, double_description, fourier_motzkin


# ---------------------------------------------------------------------------
# fans

@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple
    max_cones: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        for r in rays:
            if len(r) != self.dim:
                raise FanError(f"ray {r} does not have length {self.dim}")
            if not any(r) or primitive(r) != r:
                raise FanError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("repeated ray")
        if len(set(cones)) != len(cones):
            raise FanError("repeated cone")
        for c in cones:
            if len(set(c)) != len(c) or any(i < 0 or i >= len(rays) for i in c):
                raise FanError(f"cone {c} refers to unknown rays")

    @classmethod
    def preset(cls, name: str) -> "Fan":
        key = name.replace("×", "x").replace("_", "")
        if key not in _PRESETS:
            raise FanError(f"unknown preset {name!r}")
        return _PRESETS[key]()

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cones(self) -> list:
        """All nonzero cones (faces of maximal cones) as sorted ray-index tuples."""
        out = set()
        for c in self.max_cones:
            for k in range(1, len(c) + 1):
                out.update(combinations(c, k))
        return sorted(out, key=lambda c: (len(c), c))

    def neighbours(self, s: int) -> list:
        """Rays spanning a two-dimensional cone with ray ``s``."""
        return sorted({i for c in self.max_cones if s in c for i in c if i != s})

    def divisor(self, coeffs: Sequence) -> "TorusDivisor":
        return TorusDivisor(self, qvec(coeffs))

    def prime(self, i: int, coeff=1) -> "TorusDivisor":
        return self.divisor([coeff if j == i else 0 for j in range(self.n_rays)])

    def zero(self) -> "TorusDivisor":
        return self.divisor([0] * self.n_rays)

    def to_json(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones]}

    @classmethod
    def from_json(cls, obj) -> "Fan":
        if "preset" in obj:
            return cls.preset(obj["preset"])
        try:
            return cls(int(obj["dim"]), obj["rays"], obj["max_cones"])
        except (KeyError, TypeError) as exc:
            raise FanError(f"malformed fan: {exc}") from exc


def _polygon_fan(rays, name):
    r = len(rays)
    return Fan(2, tuple(rays), tuple((i, (i + 1) % r) for i in range(r)), name)


def hirzebruch(a: int) -> Fan:
    """``F_a``; ray 1 is the negative section ``E`` with ``E^2 = -a``."""
    return _polygon_fan([(1, 0), (0, 1), (-1, a), (0, -1)], f"F{a}")


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    return Fan(n, tuple(rays), tuple(combinations(range(n + 1), n)), f"P{n}")


_PRESETS = {
    "P1": lambda: projective_space(1),
    "P2": lambda: projective_space(2),
    "P3": lambda: projective_space(3),
    "P1xP1": lambda: _polygon_fan([(1, 0), (0, 1), (-1, 0), (0, -1)], "P1xP1"),
    "F0": lambda: _polygon_fan([(1, 0), (0, 1), (-1, 0), (0, -1)], "F0"),
    "F1": lambda: hirzebruch(1),
    "F2": lambda: hirzebruch(2),
    "F3": lambda: hirzebruch(3),
    "Bl1P2": lambda: hirzebruch(1),
    "Bl2P2": lambda: _polygon_fan([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1)], "Bl2P2"),
    "Bl3P2": lambda: _polygon_fan([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)], "Bl3P2"),
}

CATALOG = ("P1", "P2", "P1xP1", "F1", "F2", "F3", "Bl2P2", "Bl3P2", "P3")


# ---------------------------------------------------------------------------
# fan certificates

@dataclass(frozen=True)
class FanReport:
    smooth: bool
    complete: bool
    projective: bool
    determinants: tuple
    unpaired_facets: tuple
    uncovered_directions: tuple
    support_function: tuple | None

    def to_json(self):
        return {"smooth": self.smooth, "complete": self.complete, "projective": self.projective,
                "determinants": list(self.determinants),
                "unpaired_facets": [list(f) for f in self.unpaired_facets],
                "uncovered_directions": [list(d) for d in self.uncovered_directions],
                "support_function": None if self.support_function is None
                else [fmt(x) for x in self.support_function]}


def _sample_directions(n: int, seed: int = 0, count: int = 20) -> list:
    dirs = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        dirs += [tuple(e), tuple(-x for x in e)]
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    dirs.append(tuple(v))
    rng = random.Random(seed)
    while count:
        v = tuple(rng.randint(-9, 9) for _ in range(n))
        if any(v):
            dirs.append(v)
            count -= 1
    return dirs


def _in_simplicial_cone(gens, x) -> bool:
    lam = solve_linear(transpose(gens), x)
    return lam is not None and all(l >= 0 for l in lam)


def _cone_matrix(fan: Fan, cone) -> list:
    return [fan.rays[i] for i in cone]


def _m_sigma(fan: Fan, cone, coeffs):
    """``m`` with ``<m, v_rho> = -a_rho`` on the rays of a full-dimensional cone."""
    return solve_linear(_cone_matrix(fan, cone), [-Q(coeffs[i]) for i in cone])


def _convexity_rows(fan: Fan) -> list:
    """Rows ``g`` with ``g . a = <m_sigma(a), v_rho> + a_rho`` for ``rho`` outside ``sigma``."""
    rows = []
    r = fan.n_rays
    for c in fan.max_cones:
        inv = inverse(_cone_matrix(fan, c))  # m = inv @ (-a_c)
        for rho in range(r):
            if rho in c:
                continue
            w = matvec(transpose(inv), fan.rays[rho])  # <inv b, v> = <b, inv^T v>
            g = [Fraction(0)] * r
            for k, i in enumerate(c):
                g[i] -= w[k]
            g[rho] += 1
            rows.append(tuple(g))
    return rows


def validate_fan(f: Fan, seed: int = 0) -> FanReport:
    n = f.dim
    dets = []
    smooth = True
    for c in f.max_cones:
        if len(c) == n:
            d = det(_cone_matrix(f, c))
            dets.append(int(d))
            smooth &= abs(d) == 1
        else:
            dets.append(0)
            smooth = False
    full = all(len(c) == n for c in f.max_cones)
    counts = {}
    for c in f.max_cones:
        if len(c) == n:
            for facet in combinations(c, n - 1):
                counts[facet] = counts.get(facet, 0) + 1
    unpaired = tuple(sorted(fc for fc, k in counts.items() if k != 2))
    uncovered = []
    if full:
        for d in _sample_directions(n, seed):
            if not any(_in_simplicial_cone(_cone_matrix(f, c), d) for c in f.max_cones):
                uncovered.append(d)
    complete = full and not unpaired and not uncovered and bool(f.max_cones)
    support = None
    projective = False
    if complete and smooth:
        rows = [tuple(int(x) for x in _integer_row(g)) for g in _convexity_rows(f)]
        if not rows:  # a single cone per half-line (P1) is trivially fine
            support = tuple(Fraction(1) for _ in range(f.n_rays))
            projective = True
        else:
            rays, _ = double_description(rows, [], f.n_rays)
            if rays:
                w = [sum(r[i] for r, _ in rays) for i in range(f.n_rays)]
                if all(dot(g, w) > 0 for g in rows):
                    support = tuple(Fraction(x) for x in w)
                    projective = True
    return FanReport(smooth, complete, projective, tuple(dets), unpaired, tuple(uncovered), support)


def _integer_row(g):
    den = common_denominator(g)
    return [x * den for x in g]


# ---------------------------------------------------------------------------
# divisors

@dataclass(frozen=True)
class TorusDivisor:
    fan: Fan
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.fan.n_rays:
            raise DimensionError("one coefficient per ray is required")
        object.__setattr__(self, "coeffs", qvec(self.coeffs))

    def _check(self, other):
        if not isinstance(other, TorusDivisor) or other.fan != self.fan:
            raise FanError("divisors live on different fans")

    def __add__(self, other):
        self._check(other)
        return TorusDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return TorusDivisor(self.fan, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TorusDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __mul__(self, c):
        c = Q(c)
        return TorusDivisor(self.fan, tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __getitem__(self, i):
        return self.coeffs[i]

    @property
    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)

    def floor(self) -> "TorusDivisor":
        return TorusDivisor(self.fan, tuple(Fraction(math.floor(a)) for a in self.coeffs))

    @property
    def denominator(self) -> int:
        return common_denominator(self.coeffs)

    def to_json(self):
        return [fmt(a) for a in self.coeffs]


def canonical_divisor(f: Fan) -> TorusDivisor:
    return f.divisor([-1] * f.n_rays)


@lru_cache(maxsize=4096)
def _section_polytope(fan: Fan, coeffs: tuple) -> RationalPolytope:
    return RationalPolytope.from_hrep([(v, -a) for v, a in zip(fan.rays, coeffs)], (), fan.dim)


def section_polytope(d: TorusDivisor) -> RationalPolytope:
    return _section_polytope(d.fan, d.coeffs)


def tightness(d: TorusDivisor, u: Sequence, rho: int):
    """Multiplicity along ``D_rho`` of the member of ``|D|`` indexed by ``u``."""
    return dot(u, d.fan.rays[rho]) + d.coeffs[rho]


@dataclass(frozen=True)
class LinearSystem:
    divisor: TorusDivisor
    points: tuple
    fixed_part: TorusDivisor | None
    mobile_part: TorusDivisor | None

    @property
    def h0(self) -> int:
        return len(self.points)

    def to_json(self):
        return {"divisor": self.divisor.to_json(), "h0": self.h0,
                "points": [list(p) for p in self.points],
                "fixed_part": None if self.fixed_part is None else self.fixed_part.to_json(),
                "mobile_part": None if self.mobile_part is None else self.mobile_part.to_json()}


def _require_integral(d: TorusDivisor):
    if not d.is_integral:
        raise ValueError("divisor must be integral; take the round-down first")


def global_sections(d: TorusDivisor) -> LinearSystem:
    _require_integral(d)
    pts = tuple(tuple(int(x) for x in p) for p in section_polytope(d).lattice_points())
    if not pts:
        return LinearSystem(d, (), None, None)
    fix = d.fan.divisor([min(tightness(d, u, r) for u in pts) for r in range(d.fan.n_rays)])
    return LinearSystem(d, pts, fix, d - fix)


def h0(d: TorusDivisor) -> int:
    return len(section_polytope(d.floor()).lattice_points())


def _face_vertices(p: RationalPolytope, d: TorusDivisor, cone) -> list:
    return [v for v in p.vertices if all(tightness(d, v, r) == 0 for r in cone)]


def _minimal(cones: list) -> list:
    out = []
    for c in sorted(cones, key=lambda c: (len(c), c)):
        if not any(set(m) <= set(c) for m in out):
            out.append(c)
    return out


def base_locus(d: TorusDivisor) -> list:
    """Minimal cones whose orbit closures lie in ``Bs|d|`` (integral ``d``)."""
    _require_integral(d)
    p = section_polytope(d)
    if not p.has_lattice_point():
        raise BaseLocusError("Bs undefined, |D| empty")
    bad = []
    for c in d.fan.cones():
        if any(set(m) <= set(c) for m in bad):
            bad.append(c)
            continue
        verts = _face_vertices(p, d, c)
        if not verts:
            bad.append(c)
            continue
        face = RationalPolytope.from_vrep(verts, p.dim)
        if not face.has_lattice_point():
            bad.append(c)
    return _minimal(bad)


@dataclass(frozen=True)
class StableBaseLocus:
    whole: bool
    cones: tuple
    q0: int

    def to_json(self):
        return {"whole": self.whole, "cones": [list(c) for c in self.cones], "q0": self.q0}


def stable_base_locus(d: TorusDivisor) -> StableBaseLocus:
    """``B(d)`` from the real polytope; ``Bs|q d|`` agrees for ``q0 | q``."""
    p = section_polytope(d)
    if p.is_empty:
        return StableBaseLocus(True, (), d.denominator)
    q0 = lcm(d.denominator, *(common_denominator(v) for v in p.vertices))
    bad = [c for c in d.fan.cones() if not _face_vertices(p, d, c)]
    return StableBaseLocus(False, tuple(_minimal(bad)), q0)


@dataclass(frozen=True)
class Positivity:
    pseudoeffective: bool
    big: bool
    nef: bool
    ample: bool

    def to_json(self):
        return {"pseudoeffective": self.pseudoeffective, "big": self.big,
                "nef": self.nef, "ample": self.ample}


def positivity(d: TorusDivisor) -> Positivity:
    p = section_polytope(d)
    psef = not p.is_empty
    big = psef and p.affine_dim == d.fan.dim
    nef = ample = True
    for c in d.fan.max_cones:
        m = _m_sigma(d.fan, c, d.coeffs)
        for rho in range(d.fan.n_rays):
            if rho in c:
                continue
            t = tightness(d, m, rho)
            if t < 0:
                nef = ample = False
            elif t == 0:
                ample = False
    return Positivity(psef, big, nef and psef, ample and psef)


def default_ample(f: Fan) -> TorusDivisor:
    """The strictly convex support function found by :func:`validate_fan`."""
    rep = validate_fan(f)
    if not rep.projective:
        raise FanError("fan is not projective")
    return f.divisor(rep.support_function)


# ---------------------------------------------------------------------------
# asymptotic orders

def order_along(d: TorusDivisor, rho: int):
    """``o_rho(d)``: least multiplicity along ``D_rho`` over the real polytope."""
    p = section_polytope(d)
    if p.is_empty:
        raise PositivityError("divisor is not pseudo-effective")
    return p.minimize(d.fan.rays[rho]) + d.coeffs[rho]


def _orders(d: TorusDivisor) -> tuple:
    return tuple(order_along(d, r) for r in range(d.fan.n_rays))


@dataclass(frozen=True)
class ZariskiData:
    sigma: tuple
    n_sigma: TorusDivisor
    positive_part: TorusDivisor
    epsilons: tuple

    def to_json(self):
        return {"sigma": [fmt(s) for s in self.sigma], "n_sigma": self.n_sigma.to_json(),
                "positive_part": self.positive_part.to_json(),
                "epsilons": [fmt(e) for e in self.epsilons]}


def _collinear(p1, p2, p3) -> bool:
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    return (y2 - y1) * (x3 - x1) == (y3 - y1) * (x2 - x1)


def sigma(d: TorusDivisor, a: TorusDivisor | None = None, max_halvings: int = 64) -> ZariskiData:
    """``sigma_rho(d) = lim_{eps->0+} o_rho(d + eps a)`` for every ray.

    ``eps`` is halved from 1 until the last three values are collinear and
    the line through them meets the value at ``eps = 0``; the value function
    is polyhedral, so this terminates with the exact limit.
    """
    if not positivity(d).pseudoeffective:
        raise PositivityError("sigma needs a pseudo-effective divisor")
    if a is None:
        a = default_ample(d.fan)
    elif not positivity(a).ample:
        raise PositivityError("reference divisor is not ample")
    at_zero = _orders(d)
    eps = Fraction(1)
    hist = []
    result = None
    for _ in range(max_halvings):
        hist.append((eps, _orders(d + a * eps)))
        if len(hist) >= 3:
            (e1, v1), (e2, v2), (e3, v3) = hist[-3:]
            if all(_collinear((e1, v1[r]), (e2, v2[r]), (e3, v3[r])) for r in range(len(at_zero))):
                slope = [(v3[r] - v2[r]) / (e3 - e2) for r in range(len(at_zero))]
                extrap = tuple(v3[r] - slope[r] * e3 for r in range(len(at_zero)))
                if extrap == at_zero:
                    result = extrap
                    break
        eps /= 2
    if result is None:
        result = at_zero
    n = d.fan.divisor(result)
    return ZariskiData(result, n, d - n, tuple(e for e, _ in hist))


# ---------------------------------------------------------------------------
# restriction to an invariant prime divisor

@dataclass(frozen=True)
class StarFan:
    fan: Fan
    ray_map: tuple  # (ambient ray index, star ray index) pairs
    basis: tuple  # unimodular G with G v_s = e_n
    s: int

    def star_index(self, rho: int) -> int:
        return dict(self.ray_map)[rho]

    def ambient_rays(self) -> list:
        return [r for r, _ in self.ray_map]


def star_restriction(f: Fan, s: int) -> StarFan:
    """Fan of the invariant divisor ``D_s`` in ``N / Z v_s``."""
    if not 0 <= s < f.n_rays:
        raise FanError(f"{s} is not a ray index")
    if f.dim < 2:
        raise FanError("restriction needs dimension at least 2")
    g = unimodular_completion(f.rays[s])
    nbrs = f.neighbours(s)
    rays = [tuple(int(x) for x in matvec(g, f.rays[r])[:-1]) for r in nbrs]
    index = {r: i for i, r in enumerate(nbrs)}
    cones = [tuple(index[i] for i in c if i != s) for c in f.max_cones if s in c]
    star = Fan(f.dim - 1, tuple(rays), tuple(cones), f"star{s}({f.name})")
    return StarFan(star, tuple(index.items()), tuple(tuple(r) for r in g), s)


@dataclass(frozen=True)
class RestrictedSystem:
    star: StarFan
    points: tuple
    fixed_part: TorusDivisor | None
    restricted_divisor: TorusDivisor | None

    @property
    def dim(self) -> int:
        return len(self.points)

    @property
    def is_zero(self) -> bool:
        return not self.points

    def to_json(self):
        return {"dim": self.dim, "points": [list(p) for p in self.points],
                "fixed_part": None if self.fixed_part is None else self.fixed_part.to_json(),
                "restricted_divisor": None if self.restricted_divisor is None
                else self.restricted_divisor.to_json()}


def _dual_coords(star: StarFan, u: Sequence) -> tuple:
    """First ``n-1`` coordinates of ``u`` in the basis dual to ``G``."""
    ginv_t = transpose(inverse(star.basis))
    return tuple(matvec(ginv_t, u)[:-1])


def restrict_system(d: TorusDivisor, s: int) -> RestrictedSystem:
    """Image of ``H^0(X, d)`` in sections on ``D_s`` (integral ``d``).

    The fixed part along each star ray is the least tightness over the tight
    lattice points, which does not depend on a basepoint.
    """
    _require_integral(d)
    star = star_restriction(d.fan, s)
    pts = [p for p in global_sections(d).points if tightness(d, p, s) == 0]
    if not pts:
        return RestrictedSystem(star, (), None, None)
    u0 = pts[0]
    nbrs = star.ambient_rays()
    restricted = star.fan.divisor([tightness(d, u0, r) for r in nbrs])
    fix = star.fan.divisor([min(tightness(d, u, r) for u in pts) for r in nbrs])
    coords = sorted(tuple(int(x) for x in _dual_coords(star, [a - b for a, b in zip(u, u0)])) for u in pts)
    return RestrictedSystem(star, tuple(coords), fix, restricted)


def restricted_fix_asymptotic(d: TorusDivisor, s: int):
    """Real-polytope limit of ``(1/k) Fix|k d|_S`` and a multiple ``k0`` realising it.

    Returns ``(fix, k0)`` or ``(None, None)`` when ``S`` lies in ``B(d)``.
    """
    p = section_polytope(d)
    star = star_restriction(d.fan, s)
    verts = _face_vertices(p, d, (s,))
    if not verts:
        return None, None
    nbrs = star.ambient_rays()
    fix = star.fan.divisor([min(tightness(d, v, r) for v in verts) for r in nbrs])
    k0 = lcm(d.denominator, *(common_denominator(v) for v in verts))
    return fix, k0


# ---------------------------------------------------------------------------
# adjoint polytopes

@dataclass(frozen=True)
class AdjointScenario:
    fan: Fan
    s: int
    v: tuple
    a: TorusDivisor

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(i) for i in self.v))
        if self.s in self.v:
            raise ValueError("S must not be one of the boundary components")
        if len(set(self.v)) != len(self.v):
            raise ValueError("boundary components must be distinct")
        if not positivity(self.a).ample:
            raise PositivityError("A is not ample")

    def boundary(self, b: Sequence) -> TorusDivisor:
        b = qvec(b)
        if len(b) != len(self.v):
            raise DimensionError("one coefficient per boundary component")
        c = [Fraction(0)] * self.fan.n_rays
        for i, bi in zip(self.v, b):
            c[i] += bi
        return self.fan.divisor(c)

    def adjoint(self, b: Sequence, with_s: bool = True) -> TorusDivisor:
        d = canonical_divisor(self.fan) + self.a + self.boundary(b)
        return d + self.fan.prime(self.s) if with_s else d


@dataclass(frozen=True)
class AdjointPolytopes:
    box: RationalPolytope
    effective: RationalPolytope
    non_stable: RationalPolytope

    def to_json(self):
        return {"L": self.box.to_json(), "E": self.effective.to_json(), "B": self.non_stable.to_json()}


def _boundary_rows(sc: AdjointScenario, base: TorusDivisor) -> tuple:
    """Rows over ``(b, u)`` for ``P_{base + B}`` nonempty, plus the unit box."""
    p = len(sc.v)
    n = sc.fan.dim
    ineqs = []
    for rho in range(sc.fan.n_rays):
        ind = [Fraction(int(rho == i)) for i in sc.v]
        ineqs.append((tuple(ind) + qvec(sc.fan.rays[rho]), -base.coeffs[rho]))
    for i in range(p):
        e = [Fraction(int(i == j)) for j in range(p)] + [Fraction(0)] * n
        ineqs.append((tuple(e), Fraction(0)))
        ineqs.append((tuple(-x for x in e), Fraction(-1)))
    return ineqs


def _project_to_boundary(sc, ineqs, eqs) -> RationalPolytope:
    p = len(sc.v)
    n = sc.fan.dim
    rows, erows = fourier_motzkin(ineqs, eqs, p + n, range(p, p + n))
    if any(not any(r) and o > 0 for r, o in rows) or any(not any(r) and o != 0 for r, o in erows):
        return RationalPolytope.empty(p)
    rows = [(r, o) for r, o in rows if any(r)]
    erows = [(r, o) for r, o in erows if any(r)]
    return RationalPolytope.from_hrep(rows, erows, p)


def adjoint_polytopes(sc: AdjointScenario) -> AdjointPolytopes:
    """``L`` (unit box), ``E`` (``K+A+B`` psef) and ``B`` (``S`` not in ``B(K+S+A+B)``)."""
    p = len(sc.v)
    box = RationalPolytope.box([0] * p, [1] * p)
    k = canonical_divisor(sc.fan)
    e_rows = _boundary_rows(sc, k + sc.a)
    eff = _project_to_boundary(sc, e_rows, [])
    base = k + sc.a + sc.fan.prime(sc.s)
    b_rows = _boundary_rows(sc, base)
    tight_s = ((Fraction(0),) * p + qvec(sc.fan.rays[sc.s]), -base.coeffs[sc.s])
    nonst = _project_to_boundary(sc, b_rows, [tight_s])
    return AdjointPolytopes(box, eff, nonst)


def s_outside_stable_base_locus(sc: AdjointScenario, b: Sequence) -> bool:
    """Direct test of ``S`` not contained in ``B(K+S+A+B)``."""
    sbl = stable_base_locus(sc.adjoint(b))
    return not sbl.whole and (sc.s,) not in sbl.cones


def restrict_boundary(sc: AdjointScenario, b: Sequence) -> TorusDivisor:
    """``B|_S``: each component meeting ``S`` gives its coefficient to the star ray."""
    star = star_restriction(sc.fan, sc.s)
    bd = sc.boundary(b)
    return star.fan.divisor([bd.coeffs[r] for r in star.ambient_rays()])


def restrict_class(d: TorusDivisor, s: int) -> TorusDivisor:
    """Invariant representative of ``d|_S`` after moving ``d`` off ``D_s``."""
    star = star_restriction(d.fan, s)
    # rational u0 with <u0, v_s> = -d_s: along the dual basis vector of e_n
    en = [Fraction(0)] * (d.fan.dim - 1) + [-d.coeffs[s]]
    u0 = matvec(transpose(star.basis), en)
    return star.fan.divisor([tightness(d, u0, r) for r in star.ambient_rays()])


@dataclass(frozen=True)
class PhiResult:
    value: TorusDivisor
    restricted_boundary: TorusDivisor
    fix: TorusDivisor
    m: object
    k0: int | None

    def to_json(self):
        return {"phi": self.value.to_json(), "boundary_on_S": self.restricted_boundary.to_json(),
                "fix_on_S": self.fix.to_json(), "m": self.m if isinstance(self.m, str) else int(self.m),
                "k0": self.k0}


def phi(sc: AdjointScenario, b: Sequence, m="asymptotic") -> PhiResult:
    """``B|_S - B|_S ^ (1/m) Fix|m(K+S+A+B)|_S`` (coefficientwise minimum)."""
    d = sc.adjoint(b)
    bs = restrict_boundary(sc, b)
    if m == "asymptotic":
        fix, k0 = restricted_fix_asymptotic(d, sc.s)
        if fix is None:
            raise BaseLocusError("S lies in the stable base locus: the restricted system is zero")
    else:
        m = int(m)
        if m < 1:
            raise ValueError("m must be a positive integer")
        md = d * m
        if not md.is_integral:
            raise ValueError("m(K+S+A+B) is not integral")
        res = restrict_system(md, sc.s)
        if res.is_zero:
            raise BaseLocusError("S lies in Bs|m(K+S+A+B)|: res_S of the system is zero")
        fix = res.fixed_part * Fraction(1, m)
        k0 = None
    val = bs - bs.fan.divisor([min(x, y) for x, y in zip(bs.coeffs, fix.coeffs)])
    return PhiResult(val, bs, fix, m, k0)


def phi_in_effective_polytope(sc: AdjointScenario, value: TorusDivisor) -> bool:
    """``K_S + A|_S + Phi`` is pseudo-effective and ``0 <= Phi <= 1``."""
    if any(c < 0 or c > 1 for c in value.coeffs):
        return False
    a_s = restrict_class(sc.a, sc.s)
    return positivity(canonical_divisor(value.fan) + a_s + value).pseudoeffective
