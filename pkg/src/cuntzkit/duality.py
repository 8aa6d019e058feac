"""Two-route verification of the dictionary between open sets and unit
indicators.

For an indicator y below the unit e, write U_y for its support and C_y
for the closed complement of the support. Every law here is computed
once with point set geometry and once with order operations alone, and
the verifier reports whether the two routes agree. Points are probed on
a finite grid built from the piece endpoints; they are never enumerated.
"""

from __future__ import annotations

from . import gen
from . import geometry as geo
from . import lsc


def point_complement(sp: geo.SpaceDescriptor, ci: int, p=None) -> geo.OpenSet:
    """The open set of everything except one point of component ci."""
    comp = sp.components[ci]
    raw = []
    for i, c in enumerate(sp.components):
        if i != ci:
            if c.kind == "point":
                raw.append(True)
            elif c.kind == "arc":
                raw.append([(geo.frac(0), c.length, True, True)])
            else:
                raw.append("full")
            continue
        if c.kind == "point":
            raw.append(False)
        elif c.kind == "arc":
            q = geo.frac(p)
            ivs = []
            if q > 0:
                ivs.append((geo.frac(0), q, True, False))
            if q < c.length:
                ivs.append((q, c.length, False, True))
            raw.append(ivs)
        else:
            q = geo.frac(p) % c.length
            raw.append([(q, q + c.length)])
    return geo.normalize(sp, raw)


def _unit_indicator(y: lsc.LscElement):
    e = lsc.unit(y.space)
    if not lsc.leq(y, e):
        raise ValueError("expected an element below the unit")
    return e


def verify_basictop(y: lsc.LscElement, z: lsc.LscElement) -> dict:
    """Check the six translation laws for a pair of unit indicators.

    Each entry is True when the geometric route and the order route
    agree on the law.
    """
    e = _unit_indicator(y)
    _unit_indicator(z)
    sp = y.space
    uy = lsc.supp(y)
    uz = lsc.supp(z)
    cy = geo.complement(uy)
    cz = geo.complement(uz)
    out = {}

    out["closed_reverses_order"] = geo.subset(cy, cz) == lsc.leq(z, y)

    agree = True
    for ci, p in gen.grid_points(sp, uy, uz):
        member = geo.contains_point(uy, ci, p)
        pc = lsc.indicator(point_complement(sp, ci, p))
        joined = lsc.join(y, pc) == e
        if member != joined:
            agree = False
            break
    out["membership_is_unit_join"] = agree

    disjoint = geo.is_empty(geo.intersect(uy, uz))
    out["disjointness_is_zero_meet"] = disjoint == (lsc.meet(y, z) == lsc.zero(sp))

    ac = lsc.almost_complement(y, e)
    out["closure_via_almost_complement"] = geo.sets_equal(
        geo.closure(uy), geo.complement(lsc.supp(ac))
    )
    out["interior_via_almost_complement"] = geo.sets_equal(
        geo.interior(cy), lsc.supp(ac)
    )

    out["closed_inside_open_is_unit_join"] = geo.subset(cy, uz) == (lsc.join(y, z) == e)
    return out


def verify_hausdorff_wayb(y: lsc.LscElement, z: lsc.LscElement) -> bool:
    """Closure containment of supports against way below, for unit
    indicators."""
    _unit_indicator(y)
    _unit_indicator(z)
    geometric = geo.subset(geo.closure(lsc.supp(y)), lsc.supp(z))
    return geometric == lsc.way_below(y, z)


def verify_topology_laws(sp: geo.SpaceDescriptor, ys) -> dict:
    """Family laws: closed sets of a join meet, closed sets of a meet
    join, and separation of grid points. Empty families fall back to the
    whole space and the empty set."""
    e = lsc.unit(sp)
    for y in ys:
        _unit_indicator(y)
    out = {}

    closed_meet = geo.full_closed(sp)
    for y in ys:
        closed_meet = geo.intersect(closed_meet, geo.complement(lsc.supp(y)))
    joined = lsc.zero(sp)
    for y in ys:
        joined = lsc.join(joined, y)
    out["closed_sets_of_a_join_intersect"] = geo.sets_equal(
        closed_meet, geo.complement(lsc.supp(joined))
    )

    closed_join = geo.empty_closed(sp)
    for y in ys:
        closed_join = geo.union(closed_join, geo.complement(lsc.supp(y)))
    met = e
    for y in ys:
        met = lsc.meet(met, y)
    out["closed_sets_of_a_meet_unite"] = geo.sets_equal(
        closed_join, geo.complement(lsc.supp(met))
    )

    pts = []
    seen = set()
    for ci, p in gen.grid_points(sp, *[lsc.supp(y) for y in ys]):
        comp = sp.components[ci]
        if comp.kind == "circle":
            p = p % comp.length
        if (ci, p) not in seen:
            seen.add((ci, p))
            pts.append((ci, p))
    agree = True
    for i, (ci, p) in enumerate(pts):
        pc_i = lsc.indicator(point_complement(sp, ci, p))
        if pc_i == e:
            agree = False
            break
        for cj, q in pts[i:]:
            pc_j = lsc.indicator(point_complement(sp, cj, q))
            same = (ci, p) == (cj, q)
            if (lsc.join(pc_i, pc_j) == e) == same:
                agree = False
                break
        if not agree:
            break
    out["grid_points_are_separated"] = agree
    return out


def round_trip(u: geo.OpenSet) -> bool:
    """Open set to indicator and back."""
    return geo.sets_equal(lsc.supp(lsc.indicator(u)), u)
