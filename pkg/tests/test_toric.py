import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from adjring.errors import BaseLocusError, FanError, PositivityError
from adjring.toric import (CATALOG, AdjointScenario, Fan, adjoint_polytopes, base_locus,
                           canonical_divisor, default_ample, global_sections, h0, order_along,
                           phi, phi_in_effective_polytope, positivity, restrict_system,
                           section_polytope, sigma, stable_base_locus, star_restriction,
                           validate_fan)
from oracles import h0_toric

P2 = Fan.preset("P2")
F1 = Fan.preset("F1")
E = F1.prime(1)
H = P2.prime(0)


def test_catalog_fans_validate():
    for name in CATALOG:
        rep = validate_fan(Fan.preset(name))
        assert rep.smooth and rep.complete and rep.projective, name


def test_f1_determinants():
    rep = validate_fan(F1)
    assert [abs(d) for d in rep.determinants] == [1, 1, 1, 1]


def test_missing_cone_is_incomplete():
    f = Fan(2, P2.rays, P2.max_cones[:2])
    rep = validate_fan(f)
    assert not rep.complete and rep.unpaired_facets


def test_malformed_fans():
    with pytest.raises(FanError):
        Fan(2, ((2, 0), (0, 1)), ((0, 1),))
    with pytest.raises(FanError):
        Fan(2, ((1, 0), (0, 1)), ((0, 1), (0, 1)))
    with pytest.raises(FanError):
        Fan.preset("P7")


def test_canonical_divisor():
    assert canonical_divisor(P2).coeffs == (-1, -1, -1)
    assert canonical_divisor(Fan.preset("P1")).coeffs == (-1, -1)
    assert canonical_divisor(F1).coeffs == (-1, -1, -1, -1)


def test_section_polytopes():
    two_h = H * 2
    p = section_polytope(two_h)
    assert len(p.vertices) == 3 and len(p.lattice_points()) == 6
    assert len(p.lattice_points()) == h0_toric(P2.rays, two_h.coeffs, 4)
    assert section_polytope(P2.divisor([-1, -1, -1])).is_empty
    assert section_polytope(P2.zero()).vertices == ((0, 0),)


def test_global_sections_examples():
    assert global_sections(H * 2).h0 == 6
    q = Fan.preset("P1xP1")
    assert global_sections(q.divisor([1, 2, 0, 0])).h0 == 6
    ls = global_sections(E)
    assert ls.h0 == 1 and ls.fixed_part.coeffs == E.coeffs
    with pytest.raises(ValueError):
        global_sections(H * F(1, 2))


@pytest.mark.parametrize("name", ["P2", "F1", "F2", "Bl3P2", "P3"])
def test_h0_matches_enumeration(name):
    f = Fan.preset(name)
    rng = random.Random(name)
    for _ in range(5):
        d = f.divisor([rng.randint(-1, 3) for _ in range(f.n_rays)])
        assert h0(d) == h0_toric(f.rays, d.coeffs, 8)


def test_base_locus_examples():
    assert base_locus(H) == []
    assert base_locus(E) == [(1,)]
    assert base_locus(E * 2) == [(1,)]
    with pytest.raises(BaseLocusError):
        base_locus(-H)


def test_stable_base_locus_examples():
    assert stable_base_locus(H).cones == ()
    assert stable_base_locus(E).cones == ((1,),)
    s = stable_base_locus(H * F(1, 7))
    assert s.cones == () and s.q0 == 7
    assert stable_base_locus(-H).whole
    assert stable_base_locus(-H * F(1, 2)).q0 == 2


def test_positivity_examples():
    assert positivity(H).to_json() == {"pseudoeffective": True, "big": True, "nef": True, "ample": True}
    p = positivity(E)
    assert p.pseudoeffective and not p.big and not p.nef
    assert not any(positivity(-H).to_json().values())


def test_sigma_nef_is_zero_with_epsilon_oracle():
    a = default_ample(P2)
    z = sigma(H, a)
    assert z.sigma == (0, 0, 0)
    for eps in (F(1, 10), F(1, 100), F(1, 1000)):
        assert all(order_along(H + a * eps, r) == 0 for r in range(3))


def test_sigma_exceptional_curve():
    z = sigma(E)
    assert z.sigma == (0, 1, 0, 0)
    assert z.n_sigma.coeffs == E.coeffs
    with pytest.raises(PositivityError):
        sigma(-H)


def test_star_fans_are_lines():
    for f, s in ((P2, 0), (F1, 1), (Fan.preset("P1xP1"), 0)):
        star = star_restriction(f, s)
        assert star.fan.dim == 1 and sorted(star.fan.rays) == [(-1,), (1,)]
        assert validate_fan(star.fan).complete


def test_restrict_system_examples():
    assert restrict_system(H * 2, 0).dim == 3
    assert restrict_system(E, 1).is_zero
    d = F1.divisor([1, 1, 1, 1])
    assert positivity(d).ample
    for s in range(4):
        assert all(c == 0 for c in restrict_system(d, s).fixed_part.coeffs)


def test_adjoint_intervals():
    for a, expect in ((F(5, 2), ((F(1, 2),), (1,))), (4, ((0,), (1,))), (F(1, 2), None)):
        sc = AdjointScenario(P2, 0, (1,), H * a)
        e = adjoint_polytopes(sc).effective
        if expect is None:
            assert e.is_empty
        else:
            assert e.vertices == expect


def test_adjoint_requires_ample():
    with pytest.raises(PositivityError):
        AdjointScenario(P2, 0, (1,), H * 0)


def test_phi_examples():
    sc = AdjointScenario(P2, 0, (1,), H * 2)
    r = phi(sc, [1], 1)
    assert sorted(r.value.coeffs) == [0, 1]
    assert phi_in_effective_polytope(sc, r.value)
    sc4 = AdjointScenario(P2, 0, (1,), H * 4)
    r = phi(sc4, [F(1, 2)], 2)
    assert r.value.coeffs == r.restricted_boundary.coeffs
    assert all(c == 0 for c in phi(sc4, [0], "asymptotic").value.coeffs)


# ---------------------------------------------------------------------------
# properties

def _random_effective(f, rng, den=3, top=3):
    return f.divisor([F(rng.randint(0, top), rng.randint(1, den)) for _ in range(f.n_rays)])


fans = st.sampled_from(["P2", "F1", "F2", "Bl2P2", "P1xP1"])


@settings(max_examples=30, deadline=None)
@given(fans, st.integers(0, 10 ** 6))
def test_sections_multiply(name, seed):
    f = Fan.preset(name)
    rng = random.Random(seed)
    d1 = f.divisor([rng.randint(-1, 2) for _ in range(f.n_rays)])
    d2 = f.divisor([rng.randint(-1, 2) for _ in range(f.n_rays)])
    p1, p2 = global_sections(d1).points, global_sections(d2).points
    p12 = set(global_sections(d1 + d2).points)
    assert all(tuple(a + b for a, b in zip(u, w)) in p12 for u in p1 for w in p2)


@settings(max_examples=30, deadline=None)
@given(fans, st.integers(0, 10 ** 6))
def test_mobile_part_has_no_fixed_divisor(name, seed):
    f = Fan.preset(name)
    rng = random.Random(seed)
    d = f.divisor([rng.randint(0, 3) for _ in range(f.n_rays)])
    ls = global_sections(d)
    mob = global_sections(ls.mobile_part)
    assert all(c == 0 for c in mob.fixed_part.coeffs)
    assert all(len(c) > 1 for c in base_locus(ls.mobile_part))


@settings(max_examples=20, deadline=None)
@given(fans, st.integers(0, 10 ** 6))
def test_sigma_suite(name, seed):
    f = Fan.preset(name)
    rng = random.Random(seed)
    d1, d2 = _random_effective(f, rng), _random_effective(f, rng)
    s1, s2 = sigma(d1).sigma, sigma(d2).sigma
    assert sigma(d1 * 2).sigma == tuple(2 * x for x in s1)
    assert all(a <= b + c for a, b, c in zip(sigma(d1 + d2).sigma, s1, s2))
    z = sigma(d1)
    assert positivity(z.positive_part).pseudoeffective
    t = F(rng.randint(0, 4), 4)
    fpart = z.n_sigma * t
    assert sigma(d1 - fpart).n_sigma.coeffs == (z.n_sigma - fpart).coeffs


@settings(max_examples=20, deadline=None)
@given(fans, st.integers(0, 10 ** 6))
def test_sigma_zero_vs_positive(name, seed):
    f = Fan.preset(name)
    rng = random.Random(seed)
    d = _random_effective(f, rng)
    a = default_ample(f)
    sbl_plus = stable_base_locus(d + a)
    for r, s in enumerate(sigma(d, a).sigma):
        if s == 0:
            assert (r,) not in sbl_plus.cones
        else:
            eps = F(1)
            while order_along(d + a * eps, r) == 0:
                eps /= 2
            assert (r,) in stable_base_locus(d + a * eps).cones


@settings(max_examples=15, deadline=None)
@given(fans, st.integers(0, 10 ** 6))
def test_sigma_of_fixed_components(name, seed):
    f = Fan.preset(name)
    rng = random.Random(seed)
    ref = _random_effective(f, rng)
    pos = [r for r, s in enumerate(sigma(ref).sigma) if s > 0]
    if not pos:
        return
    gamma = f.divisor([F(rng.randint(0, 3), 2) if r in pos else 0 for r in range(f.n_rays)])
    z = sigma(gamma)
    assert all(z.sigma[r] == gamma.coeffs[r] for r in pos)
    assert z.n_sigma.coeffs == gamma.coeffs


@settings(max_examples=20, deadline=None)
@given(fans, st.integers(0, 10 ** 6))
def test_stable_base_locus_matches_multiples(name, seed):
    f = Fan.preset(name)
    rng = random.Random(seed)
    d = f.divisor([F(rng.randint(-2, 3), rng.randint(1, 3)) for _ in range(f.n_rays)])
    s = stable_base_locus(d)
    if s.whole:
        return
    for k in (1, 2, 3):
        assert tuple(base_locus(d * (k * s.q0))) == s.cones


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_phi_lands_in_effective_polytope(seed):
    rng = random.Random(seed)
    f = rng.choice([P2, F1])
    s = rng.randrange(f.n_rays)
    v = tuple(r for r in range(f.n_rays) if r != s)[:2]
    sc = AdjointScenario(f, s, v, default_ample(f) * rng.randint(2, 4))
    b = [F(rng.randint(0, 4), 4) for _ in v]
    polys = adjoint_polytopes(sc)
    if not polys.non_stable.contains(b):
        return
    assert phi_in_effective_polytope(sc, phi(sc, b).value)
