import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cuntzkit import duality, gen, lsc
from cuntzkit import geometry as geo

ARC = geo.space(geo.arc(1))
CIRCLE = geo.space(geo.circle(1))
MIXED = geo.space(geo.arc(1), geo.circle(2), geo.point())


def chi(*ivs, sp=ARC):
    return lsc.indicator(geo.normalize(sp, [list(ivs)]))


def test_point_complement_shapes():
    pc = duality.point_complement(ARC, 0, F(1, 2))
    assert not geo.contains_point(pc, 0, F(1, 2))
    assert geo.contains_point(pc, 0, F(0))
    assert geo.contains_point(pc, 0, F(1))
    end = duality.point_complement(ARC, 0, F(0))
    assert not geo.contains_point(end, 0, F(0))
    wrap = duality.point_complement(CIRCLE, 0, F(0))
    assert not geo.contains_point(wrap, 0, F(0))
    assert geo.contains_point(wrap, 0, F(1, 2))
    mixed = duality.point_complement(MIXED, 2)
    assert not geo.contains_point(mixed, 2)
    assert geo.contains_point(mixed, 0, F(1, 3))


def test_basictop_worked_pair():
    y = chi((F(0), F(1, 2), True, False))
    z = chi((F(1, 4), F(1), False, True))
    rep = duality.verify_basictop(y, z)
    assert all(rep.values()), rep


def test_basictop_edge_zero_and_unit():
    e = lsc.unit(ARC)
    zero = lsc.zero(ARC)
    for y in (zero, e):
        for z in (zero, e, chi((F(1, 4), F(3, 4)))):
            rep = duality.verify_basictop(y, z)
            assert all(rep.values()), (y, z, rep)


def test_basictop_rejects_non_indicators():
    with pytest.raises(ValueError):
        duality.verify_basictop(lsc.scalar_mul(2, lsc.unit(ARC)), lsc.zero(ARC))


def test_hausdorff_wayb_both_signs():
    inner = chi((F(1, 4), F(1, 2)))
    outer = chi((F(1, 8), F(3, 4)))
    assert duality.verify_hausdorff_wayb(inner, outer)
    touching = chi((F(0), F(1, 2)))
    bigger = chi((F(0), F(3, 4)))
    # closure reaches the open end, so the law must report agreement too
    assert duality.verify_hausdorff_wayb(touching, bigger)
    assert duality.verify_hausdorff_wayb(bigger, inner)


def test_topology_laws_family_and_empty():
    ys = [
        chi((F(0), F(1, 2))),
        chi((F(1, 4), F(3, 4))),
        chi((F(5, 8), F(1))),
    ]
    rep = duality.verify_topology_laws(ARC, ys)
    assert all(rep.values()), rep
    rep0 = duality.verify_topology_laws(ARC, [])
    assert all(rep0.values()), rep0


def test_round_trip_identity():
    u = geo.normalize(MIXED, [[(F(0), F(1, 3))], [(F(1, 2), F(5, 2))], True])
    assert duality.round_trip(u)
    assert duality.round_trip(geo.empty_set(MIXED))
    assert duality.round_trip(geo.full_set(MIXED))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_basictop_random_indicator_pairs(seed):
    # both routes agree on every translation law for random indicators
    rng = random.Random(seed)
    sp = gen.rand_space(rng, max_components=3)
    y = lsc.indicator(gen.rand_open_set(rng, sp))
    z = lsc.indicator(gen.rand_open_set(rng, sp))
    rep = duality.verify_basictop(y, z)
    assert all(rep.values()), rep


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_hausdorff_wayb_random_pairs(seed):
    # closure containment of supports tracks way below on indicators
    rng = random.Random(seed)
    sp = gen.rand_space(rng, max_components=3)
    y = lsc.indicator(gen.rand_open_set(rng, sp))
    z = lsc.indicator(gen.rand_open_set(rng, sp))
    assert duality.verify_hausdorff_wayb(y, z)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_topology_laws_random_families(seed):
    rng = random.Random(seed)
    sp = gen.rand_space(rng, max_components=2)
    ys = [lsc.indicator(gen.rand_open_set(rng, sp)) for _ in range(rng.randrange(0, 4))]
    rep = duality.verify_topology_laws(sp, ys)
    assert all(rep.values()), rep
