"""Arcs on the collinear reference configuration, combinatorially.

An arc is stored as its crossing sequence with the perpendicular bisector
lines (line k separates point k-1 from point k) together with one turn datum
per region visit: T at the two terminal visits, CW/CCW for the winding of
the visit around the region's marked point, S for a visit with no winding
(only backtracks; removable).  Reading convention, used consistently here
and by the complex construction: traveling left to right passing above a
point is CW, and the other three cases follow by reflecting.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange, MalformedArc
from .geom import LEFT, RIGHT, PSSegment

T = "T"
CW = "CW"
CCW = "CCW"
S = "S"

_FLIP = {CW: CCW, CCW: CW, S: S, T: T}


@dataclass(frozen=True)
class ReferenceArc:
    start: int
    end: int
    crossings: tuple[int, ...]
    turns: tuple[str, ...]

    def is_reduced(self) -> bool:
        return all(t != S for t in self.turns)

    def reversed(self) -> "ReferenceArc":
        return ReferenceArc(
            self.end,
            self.start,
            tuple(reversed(self.crossings)),
            tuple(_FLIP[t] for t in reversed(self.turns)),
        )


def regions_of(a: ReferenceArc) -> list[int]:
    """Region index before each crossing and after the last; validates."""
    r = a.start
    regs = [r]
    for c in a.crossings:
        if c == r:
            r = r - 1
        elif c == r + 1:
            r = r + 1
        else:
            raise MalformedArc(f"cannot cross line {c} from region {r}")
        if r < 0:
            raise MalformedArc("walked past the leftmost region")
        regs.append(r)
    if r != a.end:
        raise MalformedArc(f"walk ends in region {r}, not {a.end}")
    return regs


def validate_arc(a: ReferenceArc, n: int | None = None) -> None:
    if len(a.turns) != len(a.crossings) + 1:
        raise MalformedArc("need one turn per region visit")
    if a.turns[0] != T or a.turns[-1] != T:
        raise MalformedArc("first and last visits must be terminal")
    if len(a.turns) > 2 and any(t == T for t in a.turns[1:-1]):
        raise MalformedArc("terminal turn in the interior")
    for k, t in enumerate(a.turns[1:-1], start=1):
        if t == S and a.crossings[k - 1] != a.crossings[k]:
            raise MalformedArc("straight visit between distinct crossings")
    regs = regions_of(a)
    if n is not None:
        if any(c < 1 or c > n for c in a.crossings):
            raise MalformedArc("crossing index out of range")
        if max(regs) > n:
            raise MalformedArc("walked past the rightmost region")


def base_arc(n: int, i: int) -> ReferenceArc:
    """The straight segment from point i-1 to point i."""
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"i={i} not in 1..{n}")
    return ReferenceArc(i - 1, i, (i,), (T, T))


def _merge_turns(u: str, v: str) -> str:
    if u == T or v == T:
        return T
    pair = {u, v}
    if pair == {S}:
        return S
    if pair == {CW, CCW}:
        return S
    if S in pair:
        return (pair - {S}).pop()
    raise MalformedArc("merging two equal windings makes a full loop")


def _cancel_at(a: ReferenceArc, k: int) -> ReferenceArc:
    crossings = a.crossings[:k] + a.crossings[k + 2 :]
    merged = _merge_turns(a.turns[k], a.turns[k + 2])
    turns = a.turns[:k] + (merged,) + a.turns[k + 3 :]
    return ReferenceArc(a.start, a.end, crossings, turns)


def reduce_arc(a: ReferenceArc) -> ReferenceArc:
    """Remove backtracking crossings until reduced; idempotent."""
    validate_arc(a)
    changed = True
    while changed:
        changed = False
        for k in range(len(a.crossings) - 1):
            if a.crossings[k] == a.crossings[k + 1] and a.turns[k + 1] == S:
                a = _cancel_at(a, k)
                changed = True
                break
    validate_arc(a)
    return a


def spine_on_reference(a: ReferenceArc):
    """Split the crossing sequence into maximal monotone runs.

    Returns a list of (segment, orientation, (first, last)) triples where
    orientation is +1 for a left-to-right run and (first, last) is the range
    of crossing indices that the run occupies.
    """
    if not a.is_reduced():
        raise MalformedArc("spine needs a reduced arc")
    validate_arc(a)
    if not a.crossings:
        raise MalformedArc("trivial stub has no spine")
    cuts = [0]
    for k in range(len(a.crossings) - 1):
        if a.crossings[k] == a.crossings[k + 1]:
            cuts.append(k + 1)
    cuts.append(len(a.crossings))
    runs = [(cuts[t], cuts[t + 1] - 1) for t in range(len(cuts) - 1)]

    chain = []
    pos = a.start
    for first, last in runs:
        lines = a.crossings[first : last + 1]
        lo, hi = min(lines), max(lines)
        if pos == lo - 1:
            rightward, other = True, hi
        elif pos == hi:
            rightward, other = False, lo - 1
        else:
            raise MalformedArc("run does not start at the current point")
        u, v = min(pos, other), max(pos, other)
        sides = []
        for idx in range(first, last):
            # Visit after crossing idx is the region just entered.
            m = a.crossings[idx] if rightward else a.crossings[idx] - 1
            t = a.turns[idx + 1]
            if rightward:
                side = LEFT if t == CW else RIGHT
            else:
                side = LEFT if t == CCW else RIGHT
            sides.append((m, side))
        sides.sort()
        seg = PSSegment(u, v, tuple(sides))
        chain.append((seg, 1 if rightward else -1, (first, last)))
        pos = other
    return chain


def spine_chain(a: ReferenceArc):
    """The spine as a plain chain of (segment, orientation) pairs."""
    return [(seg, o) for seg, o, _ in spine_on_reference(a)]


def arc_from_chain(chain, windings) -> ReferenceArc:
    """Assemble a reduced arc from a spine chain plus joint detour senses.

    Each chain element is a (segment, orientation) pair on the reference;
    windings gives the CW/CCW sense of the forced U-turn at each joint.
    """
    if not chain:
        raise MalformedArc("empty chain")
    if len(windings) != len(chain) - 1:
        raise MalformedArc("need one winding per joint")
    crossings: list[int] = []
    turns: list[str] = [T]
    for t, (seg, o) in enumerate(chain):
        sm = seg.side_map
        if o == 1:
            lines = range(seg.i + 1, seg.j + 1)
            for ln in lines:
                crossings.append(ln)
                m = ln  # region entered after crossing ln moving right
                if m in sm:
                    turns.append(CW if sm[m] == LEFT else CCW)
        else:
            lines = range(seg.j, seg.i, -1)
            for ln in lines:
                crossings.append(ln)
                m = ln - 1
                if m in sm:
                    turns.append(CCW if sm[m] == LEFT else CW)
        if t < len(chain) - 1:
            turns.append(windings[t])
    turns.append(T)
    start = chain[0][0].i if chain[0][1] == 1 else chain[0][0].j
    end = chain[-1][0].j if chain[-1][1] == 1 else chain[-1][0].i
    arc = ReferenceArc(start, end, tuple(crossings), tuple(turns))
    validate_arc(arc)
    if not arc.is_reduced():
        raise MalformedArc("assembled arc is not reduced")
    return arc
