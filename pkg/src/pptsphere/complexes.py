"""Pointed pseudo-triangulations, the complexes K and K*, and multi-curves.

Enumeration is a backtracking search over the canonical segment order with
downward-closed pruning: non-crossing is checked pairwise against a
precomputed bitmask, pointedness on the whole partial set (it is not a
pairwise condition).  Supports of integral vectors are realized as
multi-curves by the strand-joining procedure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from . import linalg
from .errors import (
    InternalInvariantViolation,
    NotNonCrossing,
    NotPointed,
)
from .geom import (
    LEFT,
    RIGHT,
    Config,
    PSSegment,
    cross,
    dot,
    directions_at,
    enumerate_pseudo_straight,
    external_edges,
    fits_open_halfplane,
    is_crossing,
    is_pointed,
    orientation,
    vsub,
    _AngleKey,
)


@dataclass(frozen=True)
class Ppt:
    """Maximal non-crossing pointed set; always has 2n-1 segments."""

    segments: frozenset[PSSegment]

    def sort_key(self):
        return sorted(s.sort_key() for s in self.segments)


@dataclass(frozen=True)
class PptStar:
    """Maximal non-crossing pointed set missing at least one external edge."""

    segments: frozenset[PSSegment]

    def sort_key(self):
        return sorted(s.sort_key() for s in self.segments)


def _maximal_noncrossing_pointed(c: Config) -> list[frozenset[PSSegment]]:
    segs = enumerate_pseudo_straight(c)
    n_seg = len(segs)
    cross_count = [0] * n_seg
    compat = []
    for a in range(n_seg):
        mask = 0
        for b in range(n_seg):
            if b != a and not is_crossing(segs[a], segs[b], c):
                mask |= 1 << b
            elif b != a:
                cross_count[a] += 1
        compat.append(mask)

    # Angular slot tables per point: pointedness of a fan is a scan over the
    # occupied slots, looking for one cyclic gap strictly wider than pi.
    slot_dirs: list[list] = [[] for _ in range(len(c))]
    seg_slots: list[list[tuple[int, int]]] = [[] for _ in range(n_seg)]
    for k, s in enumerate(segs):
        for p, q in ((s.i, s.j), (s.j, s.i)):
            d = vsub(c[q], c[p])
            slot = None
            for t, e in enumerate(slot_dirs[p]):
                if cross(d, e) == 0 and dot(d, e) > 0:
                    slot = t
                    break
            if slot is None:
                slot = len(slot_dirs[p])
                slot_dirs[p].append(d)
            seg_slots[k].append((p, slot))
    slot_order: list[list[int]] = []
    gap_gt: list[list[list[bool]]] = []
    for p in range(len(c)):
        order = sorted(range(len(slot_dirs[p])), key=lambda t: _AngleKey(slot_dirs[p][t]))
        rank = [0] * len(order)
        for r, t in enumerate(order):
            rank[t] = r
        slot_order.append(rank)
        m = len(order)
        table = [[False] * m for _ in range(m)]
        for a in range(m):
            for b in range(m):
                # ccw gap from sorted slot a to sorted slot b exceeds pi
                table[a][b] = cross(slot_dirs[p][order[a]], slot_dirs[p][order[b]]) < 0
        gap_gt.append(table)

    counts: list[list[int]] = [[0] * len(slot_dirs[p]) for p in range(len(c))]

    def pointed_at(p: int, extra: int | None) -> bool:
        occupied = [
            slot_order[p][t]
            for t in range(len(counts[p]))
            if counts[p][t] or t == extra
        ]
        occupied.sort()
        k = len(occupied)
        if k <= 1:
            return True
        g = gap_gt[p]
        for a in range(k):
            if g[occupied[a]][occupied[(a + 1) % k]]:
                return True
        return False

    def candidate_ok(k: int) -> bool:
        for p, slot in seg_slots[k]:
            if counts[p][slot]:
                continue
            if not pointed_at(p, slot):
                return False
        return True

    # Most-constrained-first search order; results are sets, so the internal
    # order does not affect the canonical output.
    order = sorted(range(n_seg), key=lambda k: -cross_count[k])
    pos_of = [0] * n_seg
    for pos, k in enumerate(order):
        pos_of[k] = pos

    results = []
    chosen: list[int] = []

    def push(k: int):
        chosen.append(k)
        for p, slot in seg_slots[k]:
            counts[p][slot] += 1

    def pop():
        k = chosen.pop()
        for p, slot in seg_slots[k]:
            counts[p][slot] -= 1

    def recurse(mask_compat: int, start_pos: int):
        cands = []
        m = mask_compat
        while m:
            g = (m & -m).bit_length() - 1
            m &= m - 1
            if candidate_ok(g):
                cands.append(g)
        if not cands:
            results.append(frozenset(segs[k] for k in chosen))
            return
        for g in cands:
            if pos_of[g] < start_pos:
                continue
            push(g)
            recurse(mask_compat & compat[g], pos_of[g] + 1)
            pop()

    # Every maximal set contains the external edges, so seed with them.
    seed = [segs.index(e) for e in external_edges(c)]
    seed_mask = (1 << n_seg) - 1
    for k in seed:
        if not candidate_ok(k):
            raise InternalInvariantViolation("external edges do not extend")
        push(k)
        seed_mask &= compat[k]
    recurse(seed_mask, 0)
    for _ in seed:
        pop()
    uniq = sorted(set(results), key=lambda f: sorted(s.sort_key() for s in f))
    return uniq


def enumerate_ppts(c: Config) -> list[Ppt]:
    """All ppts, each checked to have exactly 2n-1 segments."""
    n = c.n
    out = []
    for f in _maximal_noncrossing_pointed(c):
        if len(f) != 2 * n - 1:
            raise InternalInvariantViolation(
                f"maximal set of size {len(f)} != {2 * n - 1}: {sorted(f, key=PSSegment.sort_key)}"
            )
        out.append(Ppt(f))
    ext = set(external_edges(c))
    for p in out:
        if not ext <= p.segments:
            raise InternalInvariantViolation("ppt missing an external edge")
    return out


def enumerate_ppt_stars(c: Config) -> list[PptStar]:
    """Every (ppt, external edge) pair gives a ppt*; duplicates removed."""
    ext = external_edges(c)
    seen = set()
    out = []
    for p in enumerate_ppts(c):
        for e in ext:
            star = frozenset(p.segments - {e})
            if star in seen:
                continue
            seen.add(star)
            out.append(PptStar(star))
    for star in out:
        _verify_star_maximality(c, star, ext)
    return sorted(out, key=PptStar.sort_key)


def _verify_star_maximality(c: Config, star: PptStar, ext) -> None:
    missing = [e for e in ext if e not in star.segments]
    if not missing:
        raise InternalInvariantViolation("ppt* contains all external edges")
    base = list(star.segments)
    for g in enumerate_pseudo_straight(c):
        if g in star.segments:
            continue
        if any(is_crossing(g, s, c) for s in base):
            continue
        if not is_pointed(base + [g], c):
            continue
        with_g = star.segments | {g}
        if all(e in with_g for e in ext):
            continue  # extension would restore all external edges: not allowed
        raise InternalInvariantViolation(f"ppt* extendable by {g}")


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[PSSegment, ...]
    facets: tuple[frozenset[int], ...]
    labels: tuple[str, ...] = ()

    def facet_segments(self, k: int) -> set[PSSegment]:
        return {self.vertices[v] for v in self.facets[k]}


def build_complex(c: Config, variant: str) -> SimplicialComplex:
    """The complex K (facets = ppts) or K* (facets = ppt*s)."""
    if variant == "K":
        fams = [p.segments for p in enumerate_ppts(c)]
    elif variant == "Kstar":
        fams = [p.segments for p in enumerate_ppt_stars(c)]
    else:
        raise ValueError("variant must be 'K' or 'Kstar'")
    verts = sorted({s for f in fams for s in f}, key=PSSegment.sort_key)
    index = {s: k for k, s in enumerate(verts)}
    facets = sorted(
        {frozenset(index[s] for s in f) for f in fams}, key=sorted
    )
    for a in facets:
        for b in facets:
            if a < b:
                raise InternalInvariantViolation("facet contained in another")
    return SimplicialComplex(tuple(verts), tuple(facets))


def all_faces(x: SimplicialComplex) -> set[frozenset[int]]:
    faces = set()
    for f in x.facets:
        fl = sorted(f)
        for r in range(1, len(fl) + 1):
            for sub in itertools.combinations(fl, r):
                faces.add(frozenset(sub))
    return faces


@dataclass(frozen=True)
class ComplexStats:
    f_vector: tuple[int, ...]
    euler: int
    homology: tuple[int, ...]
    pseudomanifold: bool


def complex_stats(x: SimplicialComplex) -> ComplexStats:
    """f-vector, Euler characteristic, rational Betti numbers, and the
    closed-pseudomanifold test (every codim-1 face in exactly two facets)."""
    faces = all_faces(x)
    dim = max(len(f) for f in faces) - 1
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(dim + 1)]
    for f in faces:
        by_dim[len(f) - 1].append(tuple(sorted(f)))
    for lst in by_dim:
        lst.sort()
    f_vector = tuple(len(lst) for lst in by_dim)
    euler = sum((-1) ** k * f_vector[k] for k in range(dim + 1))

    index = [
        {f: k for k, f in enumerate(lst)} for lst in by_dim
    ]
    ranks = []
    for k in range(1, dim + 1):
        rows = []
        for f in by_dim[k]:
            row = {}
            for m in range(len(f)):
                sub = f[:m] + f[m + 1 :]
                row[index[k - 1][sub]] = Fraction((-1) ** m)
            rows.append(row)
        ranks.append(linalg.rank_sparse(rows))
    # ranks[k-1] = rank of boundary map C_k -> C_{k-1}
    betti = []
    for k in range(dim + 1):
        rk_in = ranks[k] if k < dim else 0
        rk_out = ranks[k - 1] if k >= 1 else 0
        betti.append(f_vector[k] - rk_out - rk_in)

    pure = all(len(f) == dim + 1 for f in x.facets)
    pm = pure
    if pure and dim >= 1:
        count: dict[frozenset, int] = {}
        for f in x.facets:
            for v in f:
                sub = frozenset(f - {v})
                count[sub] = count.get(sub, 0) + 1
        pm = all(v == 2 for v in count.values())
    return ComplexStats(f_vector, euler, tuple(betti), pm)


# ---------------------------------------------------------------------------
# Support vectors and multi-curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SupportVector:
    """Formal nonnegative rational combination of pseudo-straight segments."""

    entries: tuple[tuple[PSSegment, Fraction], ...]

    def __post_init__(self):
        for _, v in self.entries:
            if v <= 0:
                raise ValueError("coefficients must be positive")

    @property
    def integral(self) -> bool:
        return all(v.denominator == 1 for _, v in self.entries)

    def set_support(self) -> list[PSSegment]:
        return [s for s, _ in self.entries]

    def as_dict(self) -> dict[PSSegment, Fraction]:
        return dict(self.entries)

    def scale(self, f: Fraction) -> "SupportVector":
        return make_support({s: v * f for s, v in self.entries})

    def __add__(self, other: "SupportVector") -> "SupportVector":
        d = self.as_dict()
        for s, v in other.entries:
            d[s] = d.get(s, Fraction(0)) + v
        return make_support(d)


def make_support(d) -> SupportVector:
    if isinstance(d, SupportVector):
        return d
    items = [(s, Fraction(v)) for s, v in (d.items() if isinstance(d, dict) else d)]
    items = [(s, v) for s, v in items if v != 0]
    items.sort(key=lambda e: e[0].sort_key())
    return SupportVector(tuple(items))


def check_support(c: Config, v: SupportVector) -> None:
    segs = v.set_support()
    for a in range(len(segs)):
        for b in range(a + 1, len(segs)):
            if is_crossing(segs[a], segs[b], c):
                raise NotNonCrossing(f"{segs[a]} crosses {segs[b]}")
    if not is_pointed(segs, c):
        raise NotPointed("set-support not pointed")


@dataclass(frozen=True)
class ArcComponent:
    start: int
    end: int
    chain: tuple[tuple[PSSegment, int], ...]  # (segment, +1 if traversed i->j)
    # winding of the forced detour at each interior joint: "CW" or "CCW"
    joint_windings: tuple[str, ...] = ()


@dataclass(frozen=True)
class ClosedComponent:
    chain: tuple[tuple[PSSegment, int], ...]
    boundary_parallel: bool = False


@dataclass(frozen=True)
class MultiCurve:
    components: tuple


def component_support(chain) -> SupportVector:
    d: dict[PSSegment, Fraction] = {}
    for s, _ in chain:
        d[s] = d.get(s, Fraction(0)) + 1
    return make_support(d)


class _End:
    """One end of one strand, sitting at marked point `at`."""

    __slots__ = ("strand", "at", "direction", "seg", "copy")

    def __init__(self, strand, at, direction):
        self.strand = strand
        self.at = at
        self.direction = direction
        self.seg = strand[0]
        self.copy = strand[1]


def _local_height(seg: PSSegment, at: int, k: int) -> int | None:
    """Height of the strand of `seg` at ray point k, in left-of-local-dir
    units when viewed from endpoint `at`.  None once the segment has ended."""
    other = seg.j if at == seg.i else seg.i
    sm = seg.side_map
    if k == other:
        return 0
    if k not in sm:
        return None
    stored = 1 if sm[k] == LEFT else -1
    return stored if at == seg.i else -stored


def _end_cmp(c: Config):
    def ray_points(p: int, d):
        pts = []
        for k in range(len(c)):
            if k == p:
                continue
            w = vsub(c[k], c[p])
            if cross(d, w) == 0 and dot(d, w) > 0:
                pts.append((dot(w, w), k))
        return [k for _, k in sorted(pts)]

    def cmp(e1: _End, e2: _End) -> int:
        k1, k2 = _AngleKey(e1.direction), _AngleKey(e2.direction)
        if k1 < k2:
            return -1
        if k2 < k1:
            return 1
        # Same ray.  Compare height sequences along the ray; higher means
        # farther left of the local direction, i.e. later in ccw order.
        if e1.seg != e2.seg:
            for k in ray_points(e1.at, e1.direction):
                h1 = _local_height(e1.seg, e1.at, k)
                h2 = _local_height(e2.seg, e2.at, k)
                a = 0 if h1 is None else h1
                b = 0 if h2 is None else h2
                if a != b:
                    return -1 if a < b else 1
                if h1 is None or h2 is None:
                    break
            raise InternalInvariantViolation("distinct segments with equal profile")
        # Parallel copies of one segment: nested by copy index, mirrored at
        # the higher endpoint.
        off1 = e1.copy if e1.at == e1.seg.i else -e1.copy
        off2 = e2.copy if e2.at == e2.seg.i else -e2.copy
        return -1 if off1 < off2 else (1 if off1 > off2 else 0)

    return cmp


def trace_components(c: Config, v: SupportVector) -> MultiCurve:
    """Realize an integral support vector as the unique multi-curve.

    Strands are joined at every marked point by repeatedly connecting the two
    extremal remaining ends with a detour leaving the conical region.
    """
    if not v.integral:
        raise ValueError("support must be integral")
    check_support(c, v)

    ends_at: dict[int, list[_End]] = {p: [] for p in range(len(c))}
    strand_ends: dict[tuple, dict[int, _End]] = {}
    for seg, mult in v.entries:
        for copy in range(int(mult)):
            strand = (seg, copy)
            e_i = _End(strand, seg.i, vsub(c[seg.j], c[seg.i]))
            e_j = _End(strand, seg.j, vsub(c[seg.i], c[seg.j]))
            ends_at[seg.i].append(e_i)
            ends_at[seg.j].append(e_j)
            strand_ends[strand] = {seg.i: e_i, seg.j: e_j}

    cmp = _end_cmp(c)
    partner: dict[int, _End] = {}
    linear_index: dict[int, int] = {}
    for p, ends in ends_at.items():
        if not ends:
            continue
        ends.sort(key=cmp_to_key(cmp))
        # Rotate so the > pi angular gap sits between the ends of the list.
        rot = 0
        if len({(e.direction[0], e.direction[1]) for e in ends}) > 1:
            for k in range(len(ends)):
                a = ends[k].direction
                b = ends[(k + 1) % len(ends)].direction
                if cross(a, b) < 0 or (cross(a, b) == 0 and dot(a, b) < 0):
                    rot = (k + 1) % len(ends)
                    break
        ends[:] = ends[rot:] + ends[:rot]
        for k, e in enumerate(ends):
            linear_index[id(e)] = k
        lo, hi = 0, len(ends) - 1
        while lo < hi:
            partner[id(ends[lo])] = ends[hi]
            partner[id(ends[hi])] = ends[lo]
            lo += 1
            hi -= 1

    visited: set[tuple] = set()
    arcs = []
    closed = []

    def walk(start_end: _End):
        chain = []
        windings = []
        e = start_end
        while True:
            seg, copy = e.strand
            visited.add(e.strand)
            orient = 1 if e.at == seg.i else -1
            chain.append((seg, orient))
            far = seg.j if e.at == seg.i else seg.i
            e_far = strand_ends[e.strand][far]
            nxt = partner.get(id(e_far))
            if nxt is None:
                return chain, windings, far
            windings.append(
                "CCW" if linear_index[id(e_far)] > linear_index[id(nxt)] else "CW"
            )
            e = nxt
            if e.strand in visited:
                return chain, windings, None

    # Arcs first (components with unmatched ends).
    for p in sorted(ends_at):
        for e in ends_at[p]:
            if id(e) not in partner and e.strand not in visited:
                chain, windings, end_at = walk(e)
                start_at = p
                if end_at < start_at:
                    # Traversing backwards flips every detour winding.
                    chain = [(s, -o) for s, o in reversed(chain)]
                    windings = [
                        "CW" if w == "CCW" else "CCW" for w in reversed(windings)
                    ]
                    start_at, end_at = end_at, start_at
                arcs.append(
                    ArcComponent(start_at, end_at, tuple(chain), tuple(windings))
                )
    # Remaining strands form closed curves.
    ext = None
    for strand in sorted(strand_ends, key=lambda st: (st[0].sort_key(), st[1])):
        if strand in visited:
            continue
        e = strand_ends[strand][strand[0].i]
        chain, windings, _ = walk(e)
        enc = _canonical_cycle(chain)
        if ext is None:
            ext = sorted(external_edges(c), key=PSSegment.sort_key)
        spine = sorted((s for s, _ in enc), key=PSSegment.sort_key)
        closed.append(ClosedComponent(enc, boundary_parallel=(spine == ext)))

    comps = tuple(
        sorted(arcs, key=lambda a: (a.start, a.end, [s.sort_key() for s, _ in a.chain]))
    ) + tuple(sorted(closed, key=lambda cc: [s.sort_key() for s, _ in cc.chain]))
    return MultiCurve(comps)


def _canonical_cycle(chain):
    best = None
    for seq in (chain, [(s, -o) for s, o in reversed(chain)]):
        for r in range(len(seq)):
            rot = tuple(seq[r:] + seq[:r])
            key = [(s.sort_key(), o) for s, o in rot]
            if best is None or key < best[0]:
                best = (key, rot)
    return best[1]


def multicurve_from_support(c: Config, v: SupportVector) -> MultiCurve:
    return trace_components(c, v)


def multicurve_support(m: MultiCurve) -> SupportVector:
    total: dict[PSSegment, Fraction] = {}
    for comp in m.components:
        for s, _ in comp.chain:
            total[s] = total.get(s, Fraction(0)) + 1
    return make_support(total)
