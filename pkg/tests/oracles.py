"""Independent reference implementations used to cross-check the library.

These deliberately avoid the library's set algebra and order relations:
membership is decided by direct endpoint arithmetic on the stored pieces,
function values are recounted per point, and comparisons run over probe
grids. Slow and simple on purpose.
"""

from __future__ import annotations

import math
from fractions import Fraction

from cuntzkit import gen
from cuntzkit import geometry as geo


def member(s, ci: int, p) -> bool:
    comp = s.space.components[ci]
    part = s.parts[ci]
    if comp.kind == "point":
        return bool(part)
    candidates = [Fraction(p)]
    if comp.kind == "circle":
        q = Fraction(p) % comp.length
        candidates = [q, q + comp.length] if q == 0 else [q]
    for x in candidates:
        for a, ain, b, bin_ in part:
            lo = a < x or (a == x and ain)
            hi = x < b or (x == b and bin_)
            if lo and hi:
                return True
    return False


def value_at(f, ci: int, p):
    comp = f.space.components[ci]
    q = None if comp.kind == "point" else p
    if member(f.infinity, ci, q):
        return math.inf
    return sum(1 for lv in f.levels if member(lv, ci, q))


def element_grid(*elements):
    sp = elements[0].space
    sets = []
    for f in elements:
        sets.extend(f.levels)
        sets.append(f.infinity)
    return gen.grid_points(sp, *sets)


def leq_oracle(f, g) -> bool:
    return all(value_at(f, ci, p) <= value_at(g, ci, p) for ci, p in element_grid(f, g))


def shrink_open_set(s, k: int):
    """Pull every interval inward by 1/k, keeping space-end inclusions and
    full circles. The family increases back to s as k grows."""
    raw = []
    step = Fraction(1, k)
    for comp, part in zip(s.space.components, s.parts):
        if comp.kind == "point":
            raw.append(bool(part))
            continue
        L = comp.length
        if comp.kind == "circle" and part == ((Fraction(0), True, L, True),):
            raw.append("full")
            continue
        ivs = []
        if comp.kind == "circle":
            for a, _, b, _ in geo._circle_spans(part, L):
                a2, b2 = a + step, b - step
                if a2 < b2:
                    start = a2 % L
                    ivs.append((start, start + (b2 - a2)))
        else:
            for a, ain, b, bin_ in part:
                a2 = a if ain else a + step
                b2 = b if bin_ else b - step
                if a2 < b2:
                    ivs.append((a2, b2, ain, bin_))
        raw.append(ivs)
    return geo.normalize(s.space, raw)


def way_below_oracle(f, g, kmax: int = 64) -> bool:
    """f sits way below g iff f has no infinite part and f fits under some
    member of the inward-shrink family of g (with the infinite part of g
    contributing shrunken copies, stacked high enough for f)."""
    from cuntzkit import lsc

    if not geo.is_empty(f.infinity):
        return False
    copies = len(f.levels) + 1
    ks = [1]
    while ks[-1] < kmax:
        ks.append(min(2 * ks[-1], kmax))
    for k in ks:
        shrunk = [shrink_open_set(lv, k) for lv in g.levels]
        vshr = shrink_open_set(g.infinity, k)
        cap = lsc.from_levels(g.space, shrunk + [vshr] * copies, geo.empty_set(g.space))
        if leq_oracle(f, cap):
            return True
    return False
