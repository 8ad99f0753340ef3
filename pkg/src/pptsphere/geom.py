"""Exact rational planar kernel.

Configurations of distinct points with Fraction coordinates, orientation
predicates, pseudo-straight segments (segments that may swerve around
collinear marked points), crossing and pointedness predicates, and external
edges.  No floating point anywhere: collinearity is the central degeneracy
and must be decided exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidSegment

Vec = tuple[Fraction, Fraction]

LEFT = "L"
RIGHT = "R"


def frac(x) -> Fraction:
    """Coerce ints, strings like '3/2', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def point(x, y) -> Vec:
    return (frac(x), frac(y))


def vsub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def cross(u: Vec, v: Vec) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Vec, v: Vec) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def orientation(p: Vec, q: Vec, r: Vec) -> int:
    """Sign of the cross product (q-p) x (r-p); 0 iff collinear."""
    return sign(cross(vsub(q, p), vsub(r, p)))


@dataclass(frozen=True)
class PSSegment:
    """A pseudo-straight segment between marked points i < j.

    ``sides`` assigns L or R to every configuration point strictly interior
    to the open straight segment (a_i, a_j).  L means the arc swerves to the
    left of the segment directed from a_i to a_j; on a horizontal
    configuration read left to right, L is above.
    """

    i: int
    j: int
    sides: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        if not self.i < self.j:
            raise InvalidSegment(f"need i < j, got ({self.i}, {self.j})")
        ks = [k for k, _ in self.sides]
        if ks != sorted(set(ks)):
            raise InvalidSegment("sides must be sorted by point index, no repeats")
        for _, s in self.sides:
            if s not in (LEFT, RIGHT):
                raise InvalidSegment(f"bad side {s!r}")

    @property
    def side_map(self) -> dict[int, str]:
        return dict(self.sides)

    def endpoints(self) -> tuple[int, int]:
        return (self.i, self.j)

    def sort_key(self):
        return (self.i, self.j, self.sides)

    def __repr__(self):
        if not self.sides:
            return f"S({self.i},{self.j})"
        body = ",".join(f"{k}:{s}" for k, s in self.sides)
        return f"S({self.i},{self.j};{body})"


def make_segment(i: int, j: int, sides=None) -> PSSegment:
    i, j = (i, j) if i < j else (j, i)
    if sides is None:
        sides = ()
    if isinstance(sides, dict):
        sides = tuple(sorted(sides.items()))
    return PSSegment(i, j, tuple(sides))


@dataclass(frozen=True)
class Config:
    """An ordered tuple of n+1 >= 2 distinct points with exact coordinates."""

    points: tuple[Vec, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("need at least 2 points")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.points) - 1

    def __len__(self):
        return len(self.points)

    def __getitem__(self, k: int) -> Vec:
        return self.points[k]

    def interior_points(self, i: int, j: int) -> list[int]:
        """Indices of configuration points strictly inside open segment (a_i, a_j)."""
        p, q = self.points[i], self.points[j]
        out = []
        for k, r in enumerate(self.points):
            if k in (i, j):
                continue
            if orientation(p, q, r) != 0:
                continue
            if dot(vsub(r, p), vsub(q, p)) > 0 and dot(vsub(r, q), vsub(p, q)) > 0:
                out.append(k)
        return out

    def all_collinear(self) -> bool:
        p, q = self.points[0], self.points[1]
        return all(orientation(p, q, r) == 0 for r in self.points[2:])

    def check_segment(self, s: PSSegment) -> None:
        if not (0 <= s.i < s.j <= self.n):
            raise InvalidSegment(f"{s} out of range for n={self.n}")
        expected = self.interior_points(s.i, s.j)
        if [k for k, _ in s.sides] != expected:
            raise InvalidSegment(
                f"{s}: sides keys {[k for k, _ in s.sides]} != interior {expected}"
            )


def config(coords) -> Config:
    return Config(tuple(point(x, y) for x, y in coords))


def segment_vector(c: Config, s: PSSegment) -> Vec:
    """Displacement a_j - a_i; the central charge of the associated object."""
    return vsub(c[s.j], c[s.i])


def enumerate_pseudo_straight(c: Config) -> list[PSSegment]:
    """All pseudo-straight segments, 2^r per pair with r interior points.

    Canonical order: by (i, j, lexicographic sides) with L < R.
    """
    out = []
    for i, j in itertools.combinations(range(len(c)), 2):
        interior = c.interior_points(i, j)
        for choice in itertools.product((LEFT, RIGHT), repeat=len(interior)):
            out.append(PSSegment(i, j, tuple(zip(interior, choice))))
    out.sort(key=PSSegment.sort_key)
    return out


def _same_line(c: Config, s: PSSegment, t: PSSegment) -> bool:
    p, q = c[s.i], c[s.j]
    return orientation(p, q, c[t.i]) == 0 and orientation(p, q, c[t.j]) == 0


def _height(c: Config, s: PSSegment, k: int) -> int:
    """+1/-1 for L/R at an interior point, 0 at an endpoint (or off-span)."""
    if k in (s.i, s.j):
        return 0
    sm = s.side_map
    if k in sm:
        return 1 if sm[k] == LEFT else -1
    return 0


def is_crossing(s: PSSegment, t: PSSegment, c: Config) -> bool:
    """Decide whether every realization of {s, t} has a forced crossing.

    Distinct supporting lines: cross iff the open straight segments meet at a
    point interior to both (marked or not).  Shared supporting line: compare
    the height patterns over the closed overlap of the spans; a crossing is
    forced exactly when the difference changes sign.
    """
    c.check_segment(s)
    c.check_segment(t)
    if s == t:
        return False
    if _same_line(c, s, t):
        p, q = c[s.i], c[s.j]
        d = vsub(q, p)
        pos = lambda k: dot(vsub(c[k], p), d)
        s_lo, s_hi = sorted((pos(s.i), pos(s.j)))
        t_lo, t_hi = sorted((pos(t.i), pos(t.j)))
        lo, hi = max(s_lo, t_lo), min(s_hi, t_hi)
        if lo > hi:
            return False
        marked = [
            k
            for k in range(len(c))
            if orientation(p, q, c[k]) == 0 and lo <= pos(k) <= hi
        ]
        diffs = [_height(c, s, k) - _height(c, t, k) for k in marked]
        return any(d > 0 for d in diffs) and any(d < 0 for d in diffs)
    # Transversal case: strict proper intersection of the open segments, or
    # a segment leaving a marked point toward the swerve side of a segment
    # detouring around that point (the detour pins the endpoint under it).
    a, b = c[s.i], c[s.j]
    u, v = c[t.i], c[t.j]
    o1, o2 = orientation(a, b, u), orientation(a, b, v)
    o3, o4 = orientation(u, v, a), orientation(u, v, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return _endpoint_under_detour(c, s, t) or _endpoint_under_detour(c, t, s)


def _endpoint_under_detour(c: Config, s: PSSegment, t: PSSegment) -> bool:
    """True iff an endpoint of t is an interior point of s and t departs on
    the same side as s's swerve there."""
    sm = s.side_map
    ds = vsub(c[s.j], c[s.i])
    for p, other in ((t.i, t.j), (t.j, t.i)):
        if p not in sm:
            continue
        cr = sign(cross(ds, vsub(c[other], c[p])))
        if (sm[p] == LEFT and cr > 0) or (sm[p] == RIGHT and cr < 0):
            return True
    return False


def _half(v: Vec) -> int:
    """0 for the upper half-plane sweep start (y>0 or y==0,x>0), 1 otherwise."""
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return 0
    return 1


def angle_sort_key(v: Vec):
    """Key for sorting direction vectors by angle in [0, 2pi), exactly.

    Vectors compare by half-plane first, then by cross product inside a half.
    Only meaningful with the companion comparator below; used via functools.
    """
    return _AngleKey(v)


class _AngleKey:
    __slots__ = ("v",)

    def __init__(self, v: Vec):
        self.v = v

    def __lt__(self, other: "_AngleKey") -> bool:
        a, b = self.v, other.v
        ha, hb = _half(a), _half(b)
        if ha != hb:
            return ha < hb
        return cross(a, b) > 0

    def __eq__(self, other) -> bool:
        a, b = self.v, other.v
        return _half(a) == _half(b) and cross(a, b) == 0


def fits_open_halfplane(dirs: list[Vec]) -> bool:
    """True iff all direction vectors lie in a common open half-plane."""
    rays: list[Vec] = []
    for d in dirs:
        if d == (0, 0):
            raise ValueError("zero direction")
        if not any(cross(d, r) == 0 and dot(d, r) > 0 for r in rays):
            rays.append(d)
    if len(rays) <= 1:
        return True
    rays.sort(key=angle_sort_key)
    for a, b in zip(rays, rays[1:] + rays[:1]):
        # Cyclic gap from a to b exceeds pi iff b is strictly clockwise of a.
        if cross(a, b) < 0:
            return True
    return False


def directions_at(c: Config, segs, p: int) -> list[Vec]:
    dirs = []
    for s in segs:
        if s.i == p:
            dirs.append(vsub(c[s.j], c[p]))
        elif s.j == p:
            dirs.append(vsub(c[s.i], c[p]))
    return dirs


def is_pointed(segs, c: Config) -> bool:
    """True iff at every marked point the incident underlying directions fit
    in an open half-plane.  Not a pairwise condition; decided on full sets."""
    segs = list(segs)
    for s in segs:
        c.check_segment(s)
    for p in range(len(c)):
        if not fits_open_halfplane(directions_at(c, segs, p)):
            return False
    return True


def convex_hull(c: Config) -> list[int]:
    """Indices of strict hull corners in counterclockwise order."""
    order = sorted(range(len(c)), key=lambda k: c[k])

    def build(seq):
        out = []
        for k in seq:
            while len(out) >= 2 and orientation(c[out[-2]], c[out[-1]], c[k]) <= 0:
                out.pop()
            out.append(k)
        return out

    lower = build(order)
    upper = build(reversed(order))
    return lower[:-1] + upper[:-1]


def external_edges(c: Config) -> list[PSSegment]:
    """Spine components of the boundary-parallel curve.

    Non-collinear: one segment per hull edge, hull-edge-interior points all
    assigned the outward side.  Fully collinear: the two full-span segments
    with all-L and all-R sides.
    """
    if c.all_collinear():
        p, q = c[0], c[1]
        d = vsub(q, p)
        pos = lambda k: dot(vsub(c[k], p), d)
        ks = sorted(range(len(c)), key=pos)
        lo, hi = min(ks[0], ks[-1]), max(ks[0], ks[-1])
        interior = c.interior_points(lo, hi)
        segs = [
            PSSegment(lo, hi, tuple((k, LEFT) for k in interior)),
            PSSegment(lo, hi, tuple((k, RIGHT) for k in interior)),
        ]
        return sorted(segs, key=PSSegment.sort_key)
    hull = convex_hull(c)
    segs = []
    for a, b in zip(hull, hull[1:] + hull[:1]):
        lo, hi = min(a, b), max(a, b)
        interior = c.interior_points(lo, hi)
        if interior:
            w = next(
                k
                for k in range(len(c))
                if orientation(c[lo], c[hi], c[k]) != 0
            )
            inner = orientation(c[lo], c[hi], c[w])
            side = RIGHT if inner > 0 else LEFT
            segs.append(PSSegment(lo, hi, tuple((k, side) for k in interior)))
        else:
            segs.append(PSSegment(lo, hi))
    return sorted(segs, key=PSSegment.sort_key)
