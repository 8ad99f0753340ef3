"""Standard stability conditions from configurations in the fundamental
domain: exact phase lifts, semistability, Harder-Narasimhan filtrations read
off augmented spines, masses, and the uniqueness scan.

Phases are never floats.  A lift is an integer winding plus an exact
direction in the half-closed upper half plane; comparisons are winding
comparisons followed by two-dimensional sign tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .complexes import (
    SupportVector,
    make_support,
    trace_components,
)
from .errors import (
    GenericityViolation,
    InternalInvariantViolation,
    NotInFundamentalDomain,
)
from .geom import (
    Config,
    PSSegment,
    cross,
    dot,
    enumerate_pseudo_straight,
    orientation,
    sign,
    vsub,
)
from .kscat import (
    DgComplex,
    direct_sum,
    hom_dims,
    ks_complex_from_arc,
    make_complex,
)
from .refarcs import CCW, CW, ReferenceArc, arc_from_chain, reduce_arc, spine_on_reference
from .wallcross import (
    in_upper_fundamental_domain,
    reference_config,
    shear_path,
    transport,
)

STABLE = "Stable"
SEMISTABLE = "StrictlySemistable"
UNSTABLE = "Unstable"


def in_h(v) -> bool:
    return v[1] > 0 or (v[1] == 0 and v[0] > 0)


@dataclass(frozen=True)
class PhaseLift:
    """phi = winding + arg(direction)/pi with direction in H, arg in [0, 1)."""

    winding: int
    direction: tuple[Fraction, Fraction]

    def __post_init__(self):
        if not in_h(self.direction):
            raise ValueError("direction must lie in the upper half plane")

    def key(self):
        return (self.winding, _FracAngle(self.direction))

    def __lt__(self, other):
        if self.winding != other.winding:
            return self.winding < other.winding
        return cross(self.direction, other.direction) > 0

    def same_phase(self, other) -> bool:
        return self.winding == other.winding and cross(self.direction, other.direction) == 0

    def floor(self) -> int:
        return self.winding

    def shift(self, k: int) -> "PhaseLift":
        return PhaseLift(self.winding + k, self.direction)


class _FracAngle:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return cross(self.v, other.v) > 0

    def __eq__(self, other):
        return cross(self.v, other.v) == 0


def lift_from_vector(vec, winding: int = 0) -> PhaseLift:
    if in_h(vec):
        return PhaseLift(winding, vec)
    return PhaseLift(winding + 1, (-vec[0], -vec[1]))


def _frac_lt(u, v) -> bool:
    """arg(u) < arg(v) for directions in H."""
    return cross(u, v) > 0


def advance_lift(prev: PhaseLift, prev_vec, next_vec, uturn_winding=None) -> PhaseLift:
    """Add the signed turn from prev_vec to next_vec, in units of pi.

    Anti-parallel vectors are a forced U-turn whose sign is the detour
    winding: +1 clockwise, -1 anticlockwise.
    """
    s = sign(cross(prev_vec, next_vec))
    if s == 0:
        if dot(prev_vec, next_vec) > 0:
            raise InternalInvariantViolation("zero turn in a spine")
        if uturn_winding not in (CW, CCW):
            raise InternalInvariantViolation("U-turn without a winding")
        return PhaseLift(prev.winding + (1 if uturn_winding == CW else -1), prev.direction)
    d_new = next_vec if in_h(next_vec) else (-next_vec[0], -next_vec[1])
    d_old = prev.direction
    if s > 0:
        # strictly counterclockwise turn, in (0, 1)
        w = prev.winding if _frac_lt(d_old, d_new) else prev.winding + 1
        if cross(d_old, d_new) == 0:
            raise InternalInvariantViolation("ccw turn with parallel lifts")
    else:
        w = prev.winding if _frac_lt(d_new, d_old) else prev.winding - 1
        if cross(d_old, d_new) == 0:
            raise InternalInvariantViolation("cw turn with parallel lifts")
    return PhaseLift(w, d_new)


@dataclass(frozen=True)
class StdStability:
    config: Config

    def __post_init__(self):
        if not in_upper_fundamental_domain(self.config):
            raise NotInFundamentalDomain("charges must lie in H")

    @property
    def n(self) -> int:
        return self.config.n

    def charge(self, i: int):
        """Z(P_i) = a_i - a_{i-1}."""
        return vsub(self.config[i], self.config[i - 1])

    def charge_of_root(self, root):
        x = Fraction(0)
        y = Fraction(0)
        for i, m in enumerate(root, start=1):
            z = self.charge(i)
            x += m * z[0]
            y += m * z[1]
        return (x, y)


def std_stability(c: Config) -> StdStability:
    return StdStability(c)


# ---------------------------------------------------------------------------
# Roots and the sign-vector semistability test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootExpr:
    word: tuple[int, ...]
    terminal: int
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(self.word):
            raise ValueError("need one sign per word letter")


def simple_root(n: int, i: int):
    v = [0] * n
    v[i - 1] = 1
    return tuple(v)


def reflect(n: int, i: int, root):
    out = list(root)
    pair = -(root[i - 2] if i >= 2 else 0) - (root[i] if i <= n - 1 else 0)
    out[i - 1] = -root[i - 1] - pair
    return tuple(out)


def root_sequence(n: int, expr: RootExpr):
    """R_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}), plus the class alpha."""
    seq = []
    letters = list(expr.word) + [expr.terminal]
    for k, ik in enumerate(letters):
        r = simple_root(n, ik)
        for i in reversed(expr.word[:k]):
            r = reflect(n, i, r)
        seq.append(r)
    return seq[:-1], seq[-1]


def _positive(root):
    if all(x >= 0 for x in root):
        return root
    if all(x <= 0 for x in root):
        return tuple(-x for x in root)
    raise ValueError(f"not a root of type A: {root}")


def classify_by_signs(tau: StdStability, expr: RootExpr) -> str:
    """Semistability of a twist word by exact phase comparisons."""
    n = tau.n
    rs, alpha = root_sequence(n, expr)
    za = tau.charge_of_root(_positive(alpha))
    strict = True
    for rk, eps in zip(rs, expr.signs):
        zr = tau.charge_of_root(_positive(rk))
        cmp = sign(cross(za, zr))  # >0 iff arg zr > arg za
        if eps == 1:
            if cmp < 0:
                return UNSTABLE
        else:
            if cmp > 0:
                return UNSTABLE
        if cmp == 0:
            strict = False
    return STABLE if strict else SEMISTABLE


def semistable_objects(tau: StdStability):
    """Every pseudo-straight segment, classified: straight segments are the
    stables, swerving ones are strictly semistable."""
    out = []
    for s in enumerate_pseudo_straight(tau.config):
        out.append((s, STABLE if not s.sides else SEMISTABLE))
    return out


# ---------------------------------------------------------------------------
# HN filtrations via augmented spines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HnEntry:
    segment: PSSegment
    lift: PhaseLift
    multiplicity: int


@dataclass(frozen=True)
class HnList:
    entries: tuple[HnEntry, ...]

    def factors(self):
        """Group consecutive equal-phase entries."""
        groups = []
        for e in self.entries:
            if groups and groups[-1][0].same_phase(e.lift):
                groups[-1][1].append(e)
            else:
                groups.append((e.lift, [e]))
        return groups

    def support(self) -> SupportVector:
        d = {}
        for e in self.entries:
            d[e.segment] = d.get(e.segment, Fraction(0)) + e.multiplicity
        return make_support(d)

    def signature(self):
        return tuple(
            (e.segment.sort_key(), e.lift.winding, _dir_key(e.lift.direction), e.multiplicity)
            for e in self.entries
        )


def _dir_key(v):
    """Primitive integer vector along v, a canonical ray representative."""
    from math import gcd

    a = v[0].numerator * v[1].denominator
    b = v[1].numerator * v[0].denominator
    g = gcd(abs(a), abs(b)) or 1
    return (a // g, b // g)


def arc_orient(a: ReferenceArc) -> ReferenceArc:
    a = reduce_arc(a)
    return a if a.start < a.end else a.reversed()


_shear_cache: dict = {}


def cached_shear_path(c: Config):
    key = c.points
    if key not in _shear_cache:
        _shear_cache[key] = shear_path(c)
    return _shear_cache[key]


def transported_spine(tau: StdStability, a: ReferenceArc):
    """The spine of the arc carried to tau's configuration, with the joint
    detour windings derived from the unique multi-curve realization."""
    a = arc_orient(a)
    ref_chain = [(seg, o) for seg, o, _ in spine_on_reference(a)]
    sp = cached_shear_path(tau.config)
    chain = transport(sp.reverse(), ref_chain)
    supp = make_support(
        _count(seg for seg, _ in chain)
    )
    mc = trace_components(tau.config, supp)
    arcs = [c for c in mc.components if hasattr(c, "start")]
    if len(mc.components) != 1 or not arcs:
        raise InternalInvariantViolation("transported spine is not one arc")
    comp = arcs[0]
    if list(comp.chain) != chain:
        raise InternalInvariantViolation("multi-curve disagrees with transport")
    return comp


def _count(items):
    d = {}
    for x in items:
        d[x] = d.get(x, Fraction(0)) + 1
    return d


def augmented_lifts(c: Config, chain, windings) -> list[PhaseLift]:
    """Phase lifts along a chain; first winding normalized to zero."""
    vecs = []
    for seg, o in chain:
        v = vsub(c[seg.j], c[seg.i])
        vecs.append(v if o == 1 else (-v[0], -v[1]))
    lifts = [lift_from_vector(vecs[0], 0)]
    for t in range(1, len(vecs)):
        lifts.append(advance_lift(lifts[-1], vecs[t - 1], vecs[t], windings[t - 1]))
    return lifts


def hn(tau: StdStability, a: ReferenceArc) -> HnList:
    """Ordered HN data: spine segments grouped by equal phase lift, sorted by
    strictly decreasing phase."""
    comp = transported_spine(tau, a)
    lifts = augmented_lifts(tau.config, comp.chain, comp.joint_windings)
    bucket: dict = {}
    order: list = []
    for (seg, _), lift in zip(comp.chain, lifts):
        key = (lift.winding, _dir_key(lift.direction), seg.sort_key())
        if key in bucket:
            bucket[key][2] += 1
        else:
            bucket[key] = [seg, lift, 1]
            order.append(key)
    entries = sorted(
        (HnEntry(seg, lift, m) for seg, lift, m in bucket.values()),
        key=lambda e: e.segment.sort_key(),
    )
    entries.sort(key=lambda e: e.lift.key(), reverse=True)
    out = HnList(tuple(entries))
    _check_decreasing(out)
    return out


def _check_decreasing(h: HnList) -> None:
    groups = h.factors()
    for (l1, _), (l2, _) in zip(groups, groups[1:]):
        if not (l2 < l1):
            raise InternalInvariantViolation("HN phases not strictly decreasing")


def mass(tau: StdStability, a: ReferenceArc, dps: int = 64):
    """Sum of charge magnitudes over the HN entries, to dps decimal digits.

    The single deliberately inexact quantity in the package; everything
    entering the square roots is exact.
    """
    h = hn(tau, a)
    with mpmath.workdps(dps + 10):
        total = mpmath.mpf(0)
        for e in h.entries:
            v = vsub(tau.config[e.segment.j], tau.config[e.segment.i])
            sq = Fraction(v[0]) ** 2 + Fraction(v[1]) ** 2
            total += e.multiplicity * mpmath.sqrt(
                mpmath.mpf(sq.numerator) / mpmath.mpf(sq.denominator)
            )
        return +total


def sigma_tau(tau: StdStability):
    """The complex of semistable objects: K*(a) with classified vertices."""
    from .complexes import build_complex

    x = build_complex(tau.config, "Kstar")
    labels = tuple(
        STABLE if not s.sides else SEMISTABLE for s in x.vertices
    )
    return type(x)(x.vertices, x.facets, labels)


# ---------------------------------------------------------------------------
# Reference-side HN blocks (exact filtration data for collinear tau)
# ---------------------------------------------------------------------------


def reference_hn_blocks(n: int, a: ReferenceArc):
    """HN blocks of the complex of an arc at a reference-like (collinear)
    stability condition: the monotone runs of the crossing sequence, with
    integer phases, as generator index ranges of the arc's complex.

    Returns (complex, blocks) with blocks = list of (phase:int, [gen idx]).
    """
    a = arc_orient(a)
    runs = spine_on_reference(a)
    x = ks_complex_from_arc(n, a)
    chain = [(seg, o) for seg, o, _ in runs]
    windings = []
    for t in range(len(runs) - 1):
        # the wrap turn between run t and t+1 sits right after the last
        # crossing of run t
        windings.append(a.turns[runs[t][2][1] + 1])
    lifts = augmented_lifts(_line_config(n), chain, windings)
    blocks = []
    for (seg, o, (first, last)), lift in zip(runs, lifts):
        if cross(lift.direction, (Fraction(1), Fraction(0))) != 0:
            raise InternalInvariantViolation("reference lift not horizontal")
        blocks.append((lift.winding, list(range(first, last + 1))))
    return x, blocks


def _line_config(n: int) -> Config:
    return Config(tuple((Fraction(k), Fraction(0)) for k in range(n + 1)))


def reference_hn_factors(n: int, a: ReferenceArc):
    """Factor complexes (grouped by equal phase, decreasing) of an arc's
    complex at a reference-like stability condition, with exact shifts."""
    x, blocks = reference_hn_blocks(n, a)
    byphase: dict[int, list[int]] = {}
    for w, idxs in blocks:
        byphase.setdefault(w, []).extend(idxs)
    out = []
    dmap = x.diff_map()
    for w in sorted(byphase, reverse=True):
        idxs = sorted(byphase[w])
        renum = {g: t for t, g in enumerate(idxs)}
        gens = [x.gens[g] for g in idxs]
        diff = {
            (renum[r], renum[c]): dict(e)
            for (r, c), e in dmap.items()
            if r in renum and c in renum
        }
        out.append((w, make_complex(x.n, gens, diff)))
    return x, out


# ---------------------------------------------------------------------------
# Corpus and the uniqueness scan
# ---------------------------------------------------------------------------


def braid_arc_action(n: int, word, a: ReferenceArc) -> ReferenceArc:
    """The braid action on reference arcs, through supports.

    The support transports geometrically; the unique multi-curve with the
    transported support recovers the arc together with its joint windings.
    """
    from .wallcross import braid_word_action

    a = arc_orient(a)
    chain = [(seg, o) for seg, o, _ in spine_on_reference(a)]
    ref = _line_config(n)
    moved = braid_word_action(ref, word, chain)
    mc = trace_components(ref, make_support(_count(s for s, _ in moved)))
    comps = [c for c in mc.components if hasattr(c, "start")]
    if len(mc.components) != 1 or not comps:
        raise InternalInvariantViolation("braid image support is not one arc")
    comp = comps[0]
    if list(comp.chain) != moved and list(comp.chain) != [
        (s, -o) for s, o in reversed(moved)
    ]:
        raise InternalInvariantViolation("braid image chain mismatch")
    return arc_from_chain(list(comp.chain), list(comp.joint_windings))


def arc_corpus(n: int, max_len: int, generators=None) -> list[ReferenceArc]:
    """Distinct arcs from braid words up to max_len on the base arcs."""
    from .refarcs import base_arc

    if generators is None:
        generators = [(i, s) for i in range(1, n + 1) for s in (1, -1)]
    seen = {}
    frontier = []
    for i in range(1, n + 1):
        a = arc_orient(base_arc(n, i))
        key = (a.start, a.end, a.crossings, a.turns)
        if key not in seen:
            seen[key] = a
            frontier.append(a)
    for _ in range(max_len):
        nxt = []
        for a in frontier:
            for g in generators:
                b = braid_arc_action(n, [g], a)
                key = (b.start, b.end, b.crossings, b.turns)
                if key not in seen:
                    seen[key] = b
                    nxt.append(b)
        frontier = nxt
    return sorted(
        seen.values(), key=lambda a: (len(a.crossings), a.start, a.end, a.crossings, a.turns)
    )


def is_generic(c: Config) -> bool:
    return not any(
        orientation(c[i], c[j], c[k]) == 0
        for i, j, k in itertools.combinations(range(len(c)), 3)
    )


def hn_uniqueness_scan(tau: StdStability, max_len: int, check_factors: bool = True):
    """Distinctness of ordered HN lists across all corpus arcs, plus the
    spherical-factor and vanishing-self-extension checks."""
    if not is_generic(tau.config):
        raise GenericityViolation("scan needs no three collinear points")
    n = tau.n
    corpus = arc_corpus(n, max_len)
    seen: dict = {}
    report = {"arcs": len(corpus), "factors_checked": 0}
    for a in corpus:
        h = hn(tau, a)
        sig = h.signature()
        if sig in seen:
            raise InternalInvariantViolation(
                f"two arcs share an ordered HN list: {seen[sig]} vs {a}"
            )
        seen[sig] = a
        if check_factors:
            for e in h.entries:
                x = _segment_object(tau, e.segment)
                hd = hom_dims(x, x)
                if hd != {0: 1, 2: 1}:
                    raise InternalInvariantViolation("HN piece not spherical")
                report["factors_checked"] += 1
    report["distinct"] = len(seen)
    return report


def _segment_object(tau: StdStability, seg: PSSegment) -> DgComplex:
    """The complex of a pseudo-straight segment on tau's configuration,
    through the shear identification with the reference."""
    sp = cached_shear_path(tau.config)
    chain = transport(sp, [(seg, 1)])
    mc = trace_components(reference_config(tau.config), make_support(_count(s for s, _ in chain)))
    comp = [c for c in mc.components if hasattr(c, "start")][0]
    arc = arc_from_chain(list(comp.chain), list(comp.joint_windings))
    return ks_complex_from_arc(tau.n, arc)


def factor_objects(tau: StdStability, h: HnList):
    """One complex per HN entry (up to shift); grouped factors are direct
    sums of the entries' complexes."""
    out = []
    for lift, group in h.factors():
        xs = []
        for e in group:
            x = _segment_object(tau, e.segment)
            for _ in range(e.multiplicity):
                xs.append(x)
        out.append((lift, direct_sum(xs) if len(xs) > 1 else xs[0]))
    return out
