"""Cycle complexes and explicit PL wall-crossing maps for rank-two Coxeter
systems I_2(n).

Vertices are opaque labels; the structure is the incidence combinatorics of
the polygon tiling plus the explicit coefficient formula on the subdivided
edge.  Off-wall loci see the n-gon A_1..A_n; on-wall loci see the
(2n-2)-gon A_1..A_n, B_{n-1}..B_2 with B_1 = A_1 and B_n = A_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotSeparated

OFF_WALL = "OffWall"
ON_WALL = "OnWall"


@dataclass(frozen=True)
class Rank2Locus:
    n: int
    kind: str
    wall: int = 0  # wall id: the wall between A_n and A_1 of the tile is 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.kind not in (OFF_WALL, ON_WALL):
            raise ValueError("kind must be OffWall or OnWall")


@dataclass(frozen=True)
class Rank2Complex:
    """A 1-dimensional cycle with labeled vertices."""

    labels: tuple[str, ...]

    def edges(self):
        k = len(self.labels)
        return [(self.labels[t], self.labels[(t + 1) % k]) for t in range(k)]


def rank2_complex(l: Rank2Locus) -> Rank2Complex:
    n = l.n
    if l.kind == OFF_WALL:
        return Rank2Complex(tuple(f"A{t}" for t in range(1, n + 1)))
    labels = [f"A{t}" for t in range(1, n + 1)]
    labels += [f"B{t}" for t in range(n - 1, 1, -1)]
    return Rank2Complex(tuple(labels))


@dataclass(frozen=True)
class Rank2PLMap:
    """The PL homeomorphism from the on-wall cycle to the off-wall cycle.

    Shared vertices map identically; B_i maps to the stated rational point
    of the edge A_1 A_n, and the map is linear on each edge.
    """

    n: int

    def vertex_image(self, label: str) -> dict[str, Fraction]:
        n = self.n
        if label.startswith("A"):
            return {label: Fraction(1)}
        i = int(label[1:])
        if i == 1:
            return {"A1": Fraction(1)}
        if i == n:
            return {f"A{n}": Fraction(1)}
        g = gcd(n - i, i - 1)
        return {
            "A1": Fraction(n - i, g),
            f"A{n}": Fraction(i - 1, g),
        }

    def b_parameter(self, i: int) -> Fraction:
        """Position of the image of B_i on the edge A_1 A_n, in [0, 1]."""
        img = self.vertex_image(f"B{i}")
        a1 = img.get("A1", Fraction(0))
        an = img.get(f"A{self.n}", Fraction(0))
        return an / (a1 + an)

    def apply(self, point: dict[str, Fraction]) -> dict[str, Fraction]:
        """Linear extension on a point of the on-wall cycle, given as a
        convex-ish combination supported on one edge (or vertex)."""
        out: dict[str, Fraction] = {}
        for label, coef in point.items():
            for tgt, w in self.vertex_image(label).items():
                out[tgt] = out.get(tgt, Fraction(0)) + coef * w
        return {k: v for k, v in out.items() if v}

    def invert(self, point: dict[str, Fraction]) -> dict[str, Fraction]:
        """Inverse on points supported on an off-wall edge."""
        n = self.n
        support = set(point)
        if not support <= {"A1", f"A{n}"}:
            # away from the subdivided edge the map is the identity
            return dict(point)
        a1 = point.get("A1", Fraction(0))
        an = point.get(f"A{n}", Fraction(0))
        if a1 == 0 and an == 0:
            return {}
        total = a1 + an
        t = an / total
        # breakpoints along the edge: B_1 = A_1 at 0, then B_2..B_{n-1}, B_n = A_n at 1
        marks = [(Fraction(0), "A1")]
        for i in range(2, n):
            marks.append((self.b_parameter(i), f"B{i}"))
        marks.append((Fraction(1), f"A{n}"))
        for (t0, l0), (t1, l1) in zip(marks, marks[1:]):
            if t0 <= t <= t1:
                if t == t0:
                    return _scale_vertex(self, l0, total)
                if t == t1:
                    return _scale_vertex(self, l1, total)
                u = (t - t0) / (t1 - t0)
                out: dict[str, Fraction] = {}
                for l, w in ((l0, 1 - u), (l1, u)):
                    scale = total * w / _image_mass(self, l)
                    out[l] = out.get(l, Fraction(0)) + scale
                return {k: v for k, v in out.items() if v}
        raise ValueError("parameter out of range")


def _image_mass(m: Rank2PLMap, label: str) -> Fraction:
    return sum(m.vertex_image(label).values())


def _scale_vertex(m: Rank2PLMap, label: str, total: Fraction) -> dict[str, Fraction]:
    return {label: total / _image_mass(m, label)}


def rank2_pl_map(n: int) -> Rank2PLMap:
    return Rank2PLMap(n)


def _circle_positions(n: int) -> dict[str, Fraction]:
    """Canonical cyclic coordinates in [0, 2n-2) for all on-wall vertices."""
    pos = {}
    for t in range(1, n + 1):
        pos[f"A{t}"] = Fraction(t - 1)
    for i in range(n - 1, 1, -1):
        pos[f"B{i}"] = Fraction(2 * n - 1 - i)
    pos["B1"] = pos["A1"]
    pos[f"B{n}"] = pos[f"A{n}"]
    return pos


def rank2_hn_edge(l: Rank2Locus, x: Fraction) -> tuple[str, str]:
    """Endpoints of the edge of l's polygon separating the boundary point x
    (a cyclic coordinate in [0, 2n-2)) from the locus."""
    n = l.n
    x = Fraction(x) % (2 * n - 2)
    pos = _circle_positions(n)
    cyc = rank2_complex(l).labels
    coords = [pos[label] for label in cyc]
    for t, label in enumerate(cyc):
        if x == coords[t]:
            raise NotSeparated(f"{label} is a vertex of the polygon; HN is itself")
    for t in range(len(cyc)):
        a, b = coords[t], coords[(t + 1) % len(cyc)]
        if a < b:
            inside = a < x < b
        else:
            inside = x > a or x < b
        if inside:
            return (cyc[t], cyc[(t + 1) % len(cyc)])
    raise NotSeparated("no separating edge found")
