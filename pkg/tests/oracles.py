"""Independent test oracles.

The crossing oracle realizes each pseudo-straight segment as an exact
rational polyline (a baseline at a small perpendicular offset with
triangular detours around the interior points on the recorded sides) and
counts proper intersections.  A pair crosses exactly when every realization
in a small family (offset magnitudes and nesting orders swapped, endpoint
approaches flipped) has at least one intersection.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from pptsphere.geom import Config, PSSegment, cross, dot, orientation, sign, vsub


class Degenerate(Exception):
    pass


def polyline(c: Config, s: PSSegment, eta: Fraction, zeta: Fraction, doglegs=None):
    """Exact realization of s; doglegs maps an endpoint index to an offset
    vector for the final approach (used when that endpoint sits inside the
    other segment of the pair under test)."""
    a, b = c[s.i], c[s.j]
    d = vsub(b, a)
    perp = (-d[1], d[0])
    pos = lambda p: dot(vsub(p, a), d)
    marks = sorted((pos(c[k]), k, side) for k, side in s.sides)
    span = pos(b)
    gaps = []
    prev = Fraction(0)
    for t, _, _ in marks:
        gaps.append(t - prev)
        prev = t
    gaps.append(span - prev)
    if any(g <= 0 for g in gaps):
        raise Degenerate("bad mark order")
    scale = min(gaps) / (4 * span)
    eta = eta * scale
    zeta = zeta * scale
    zshift = (zeta * perp[0], zeta * perp[1])
    pts = [a]
    doglegs = doglegs or {}
    if s.i in doglegs:
        w = doglegs[s.i]
        pts.append((a[0] + w[0], a[1] + w[1]))
    cur = (a[0] + zshift[0] + eta * d[0], a[1] + zshift[1] + eta * d[1])
    pts.append(cur)
    for t, k, side in marks:
        p = c[k]
        sgn = 1 if side == "L" else -1
        before = (p[0] - eta * d[0] + zshift[0], p[1] - eta * d[1] + zshift[1])
        apex = (p[0] + sgn * eta * perp[0], p[1] + sgn * eta * perp[1])
        after = (p[0] + eta * d[0] + zshift[0], p[1] + eta * d[1] + zshift[1])
        pts.extend([before, apex, after])
    last = (b[0] + zshift[0] - eta * d[0], b[1] + zshift[1] - eta * d[1])
    pts.append(last)
    if s.j in doglegs:
        w = doglegs[s.j]
        pts.append((b[0] + w[0], b[1] + w[1]))
    pts.append(b)
    return pts


def _seg_inter(p1, p2, q1, q2, allowed):
    """Number of intersection points of two closed segments; raises on
    non-generic contact away from the allowed points."""
    d1 = vsub(p2, p1)
    d2 = vsub(q2, q1)
    denom = cross(d1, d2)
    if denom == 0:
        if orientation(p1, p2, q1) == 0 and orientation(p1, p2, q2) == 0:
            # collinear: any overlap beyond a shared allowed endpoint is bad
            t = lambda p: dot(vsub(p, p1), d1)
            lo1, hi1 = sorted((t(p1), t(p2)))
            lo2, hi2 = sorted((t(q1), t(q2)))
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo > hi:
                return []
            if lo == hi:
                pt = next(p for p in (p1, p2, q1, q2) if t(p) == lo)
                if pt in allowed:
                    return []
                raise Degenerate("collinear touch")
            raise Degenerate("collinear overlap")
        return []
    t = cross(vsub(q1, p1), d2) / denom
    u = cross(vsub(q1, p1), d1) / denom
    if not (0 <= t <= 1 and 0 <= u <= 1):
        return []
    pt = (p1[0] + t * d1[0], p1[1] + t * d1[1])
    if pt in allowed:
        return []
    if t in (0, 1) or u in (0, 1):
        raise Degenerate(f"endpoint touch at {pt}")
    return [pt]


def count_intersections(c, s, t, pts_s, pts_t):
    shared = {c[k] for k in (s.i, s.j) if k in (t.i, t.j)}
    found = set()
    for p1, p2 in zip(pts_s, pts_s[1:]):
        if p1 == p2:
            continue
        for q1, q2 in zip(pts_t, pts_t[1:]):
            if q1 == q2:
                continue
            for pt in _seg_inter(p1, p2, q1, q2, shared):
                found.add(pt)
    return len(found)


def oracle_crossing(c: Config, s: PSSegment, t: PSSegment) -> bool:
    """Minimal intersection count over the realization family, exactly."""
    if s == t:
        return False
    same_line = (
        orientation(c[s.i], c[s.j], c[t.i]) == 0
        and orientation(c[s.i], c[s.j], c[t.j]) == 0
    )
    # endpoint-inside-the-other incidences, for transverse pairs only
    dog_opts_s = _dogleg_options(c, s, t) if not same_line else [{}]
    dog_opts_t = _dogleg_options(c, t, s) if not same_line else [{}]

    z1, z2 = Fraction(1, 11), Fraction(1, 23)
    zeta_opts = [
        (s1 * za, s2 * zb)
        for za, zb in ((z1, z2), (z2, z1))
        for s1 in (1, -1)
        for s2 in (1, -1)
    ]
    best = None
    for shrink in range(6):
        f = Fraction(1, 4**shrink)
        counts = []
        try:
            for (es, et) in ((Fraction(1), Fraction(1, 2)), (Fraction(1, 2), Fraction(1))):
                for (zs, zt) in zeta_opts:
                    for ds in dog_opts_s:
                        for dt in dog_opts_t:
                            ps = polyline(c, s, es * f, zs * f, _scaled(ds, f))
                            pt = polyline(c, t, et * f, zt * f, _scaled(dt, f))
                            counts.append(count_intersections(c, s, t, ps, pt))
                            if counts[-1] == 0:
                                raise StopIteration
        except StopIteration:
            counts.append(0)
        except Degenerate:
            continue
        m = min(counts)
        if best is not None and best == m:
            return m > 0
        best = m
    raise Degenerate("oracle did not stabilize")


def _scaled(dog, f):
    return {k: (w[0] * f, w[1] * f) for k, (w) in dog.items()}


def _dogleg_options(c, t, s):
    """Approach offsets for endpoints of t that are interior points of s."""
    sm = dict(s.sides)
    opts = [{}]
    for p in (t.i, t.j):
        if p not in sm:
            continue
        d = vsub(c[s.j], c[s.i])
        perp = (-d[1], d[0])
        mag = Fraction(1, 97)
        # tilt off the exact perpendicular so the approach never runs along
        # the detour apex ray
        w0 = (perp[0] + d[0] / 13, perp[1] + d[1] / 13)
        new = []
        for base in opts:
            for sgn in (1, -1):
                o = dict(base)
                o[p] = (sgn * mag * w0[0], sgn * mag * w0[1])
                new.append(o)
        opts = new
    return opts
