"""Elementary deformations and degenerations, PL transport, easy paths.

A step moves one point along a straight line.  Deformations never create a
collinearity after time 0, degenerations are their reverses.  Transport of
supports is linear over deformations (taut-string per segment) and is
computed through the unique multi-curve over degenerations, where spine
elements can fuse across straightening joints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    SupportVector,
    make_support,
    trace_components,
)
from .errors import (
    InternalInvariantViolation,
    InvalidSegment,
    NotInFundamentalDomain,
    PathThroughPoint,
    SplitFailure,
    UnsupportedVector,
)
from .geom import (
    LEFT,
    RIGHT,
    Config,
    PSSegment,
    cross,
    dot,
    external_edges,
    is_crossing,
    is_pointed,
    orientation,
    sign,
    vsub,
)

DEFORM = "deform"
DEGEN = "degen"
RPP = "rpp"


@dataclass(frozen=True)
class ElementaryStep:
    cfrom: Config
    cto: Config
    moving: int
    kind: str

    def reverse(self) -> "ElementaryStep":
        kind = {DEFORM: DEGEN, DEGEN: DEFORM, RPP: RPP}[self.kind]
        return ElementaryStep(self.cto, self.cfrom, self.moving, kind)


@dataclass(frozen=True)
class EasyPath:
    steps: tuple[ElementaryStep, ...]

    def __post_init__(self):
        for a, b in zip(self.steps, self.steps[1:]):
            if a.cto != b.cfrom:
                raise ValueError("steps do not compose")

    def reverse(self) -> "EasyPath":
        return EasyPath(tuple(s.reverse() for s in reversed(self.steps)))

    def __add__(self, other: "EasyPath") -> "EasyPath":
        return EasyPath(self.steps + other.steps)

    @property
    def start(self) -> Config | None:
        return self.steps[0].cfrom if self.steps else None

    @property
    def end(self) -> Config | None:
        return self.steps[-1].cto if self.steps else None


def _orient_poly(s: ElementaryStep, i: int, j: int, k: int):
    """orientation(a_i(t), a_j(t), a_k(t)) = A + B t along the step."""
    l = s.moving
    pos0 = {i: s.cfrom[i], j: s.cfrom[j], k: s.cfrom[k]}
    vel = {m: (Fraction(0), Fraction(0)) for m in (i, j, k)}
    if l in pos0:
        vel[l] = vsub(s.cto[l], s.cfrom[l])
    p, q, r = pos0[i], pos0[j], pos0[k]
    vp, vq, vr = vel[i], vel[j], vel[k]
    # cross(q - p + t(vq - vp), r - p + t(vr - vp)); at most one velocity
    # is nonzero, so the quadratic term vanishes.
    u0, u1 = vsub(q, p), vsub(vq, vp)
    w0, w1 = vsub(r, p), vsub(vr, vp)
    A = cross(u0, w0)
    B = cross(u0, w1) + cross(u1, w0)
    if cross(u1, w1) != 0:
        raise InternalInvariantViolation("more than one moving point")
    return A, B


def _collision_time(s: ElementaryStep, m: int):
    """Time in [0,1] when the mover coincides with point m, or None."""
    l = s.moving
    d0 = vsub(s.cfrom[l], s.cfrom[m])
    v = vsub(s.cto[l], s.cfrom[l])
    # d0 + t v == 0
    if v == (0, 0):
        return None
    ts = []
    for c in (0, 1):
        if v[c] != 0:
            ts.append(Fraction(-d0[c], v[c]))
    if len(ts) == 2 and ts[0] != ts[1]:
        return None
    t = ts[0]
    if d0[0] + t * v[0] == 0 and d0[1] + t * v[1] == 0 and 0 <= t <= 1:
        return t
    return None


def validate_step(s: ElementaryStep) -> bool:
    n1 = len(s.cfrom)
    if len(s.cto) != n1:
        return False
    for m in range(n1):
        if m != s.moving and s.cfrom[m] != s.cto[m]:
            return False
    for m in range(n1):
        if m != s.moving and _collision_time(s, m) is not None:
            return False
    for i, j, k in itertools.combinations(range(n1), 3):
        A, B = _orient_poly(s, i, j, k)
        if B == 0:
            continue  # constant sign or identically collinear
        t = Fraction(-A, B)
        if s.kind == DEFORM:
            if A != 0 and 0 < t <= 1:
                return False
        elif s.kind == DEGEN:
            if A + B != 0 and 0 <= t < 1:
                return False
        elif s.kind == RPP:
            if 0 <= t <= 1:
                return False
        else:
            return False
    return True


def _side_before_landing(B: Fraction) -> str:
    """Side of a point approaching the segment: the arc ends up opposite.

    f(t) = B(t-1) vanishes at t=1; the point sat at sign -B just before, so
    the swerve goes to the other side.
    """
    return LEFT if -sign(B) < 0 else RIGHT


def degen_segment(s: ElementaryStep, seg: PSSegment) -> PSSegment:
    """Transport a single segment across a degeneration."""
    if s.kind != DEGEN:
        raise ValueError("degen_segment needs a degeneration step")
    s.cfrom.check_segment(seg)
    old = seg.side_map
    interior = s.cto.interior_points(seg.i, seg.j)
    if not set(old) <= set(interior):
        raise InvalidSegment("an interior point escaped during a degeneration")
    sides = []
    for k in interior:
        if k in old:
            sides.append((k, old[k]))
        else:
            A, B = _orient_poly(s, seg.i, seg.j, k)
            if A + B != 0 or B == 0:
                raise InternalInvariantViolation("expected landing at t=1")
            sides.append((k, _side_before_landing(B)))
    out = PSSegment(seg.i, seg.j, tuple(sides))
    s.cto.check_segment(out)
    return out


def deform_segment(s: ElementaryStep, seg: PSSegment):
    """Taut-string transport across a deformation.

    Returns the spine of the deformed arc as a list of (segment, orient)
    traversed from seg.i to seg.j; orient is +1 when a piece is walked from
    its lower to its higher index.
    """
    if s.kind != DEFORM:
        raise ValueError("deform_segment needs a deformation step")
    s.cfrom.check_segment(seg)
    c1 = s.cto
    p0, p1 = s.cfrom[seg.i], s.cfrom[seg.j]
    d = vsub(p1, p0)
    obstacles = sorted(
        ((dot(vsub(s.cfrom[k], p0), d), k, side) for k, side in seg.sides)
    )
    obs = [(k, side) for _, k, side in obstacles]
    A, Bp = c1[seg.i], c1[seg.j]

    valid_chains = []
    for bends in _subsets(obs):
        chain = _try_chain(c1, seg.i, seg.j, obs, bends)
        if chain is not None:
            valid_chains.append(chain)
    if len(valid_chains) != 1:
        raise InternalInvariantViolation(
            f"taut string found {len(valid_chains)} chains for {seg}"
        )
    return valid_chains[0]


def _subsets(obs):
    for r in range(len(obs) + 1):
        yield from itertools.combinations(obs, r)


def _try_chain(c1: Config, i: int, j: int, obs, bends):
    nodes = [i] + [k for k, _ in bends] + [j]
    bend_side = dict(bends)
    # strict turn at every bend, matching the swerve side
    for t in range(1, len(nodes) - 1):
        u, v, w = (c1[nodes[t - 1]], c1[nodes[t]], c1[nodes[t + 1]])
        turn = sign(cross(vsub(v, u), vsub(w, v)))
        need = -1 if bend_side[nodes[t]] == LEFT else 1
        if turn != need:
            return None
    # assign skipped obstacles to legs, in order
    legs = []
    bend_set = {k for k, _ in bends}
    seq = [(i, None)] + list(obs) + [(j, None)]
    leg_members: list[list[tuple[int, str]]] = [[] for _ in range(len(nodes) - 1)]
    leg_idx = 0
    for k, side in obs:
        if k in bend_set:
            leg_idx += 1
            continue
        leg_members[leg_idx].append((k, side))
    chain = []
    for t in range(len(nodes) - 1):
        a, b = nodes[t], nodes[t + 1]
        u, v = c1[a], c1[b]
        sides = []
        for k, side in leg_members[t]:
            o = orientation(u, v, c1[k])
            need = -1 if side == LEFT else 1
            if o == 0:
                # lies on the leg; keep its side as an interior point
                if not (
                    dot(vsub(c1[k], u), vsub(v, u)) > 0
                    and dot(vsub(c1[k], v), vsub(u, v)) > 0
                ):
                    return None
                sides.append((k, side))
            elif o != need:
                return None
        lo, hi = min(a, b), max(a, b)
        seg = PSSegment(lo, hi, tuple(sorted(sides)))
        try:
            c1.check_segment(seg)
        except InvalidSegment:
            return None
        chain.append((seg, 1 if a == lo else -1))
    return chain


def _chain_endpoints(el):
    seg, o = el
    return (seg.i, seg.j) if o == 1 else (seg.j, seg.i)


def transport_chain(s: ElementaryStep, chain):
    """Transport an ordered chain of (segment, orient) across one step."""
    if s.kind == RPP:
        return list(chain)
    if s.kind == DEFORM:
        out = []
        for seg, o in chain:
            piece = deform_segment(s, seg)
            if o == -1:
                piece = [(sg, -oo) for sg, oo in reversed(piece)]
            out.extend(piece)
        return out
    # degeneration: map pieces, then fuse joints that straighten
    recs = [_degen_record(s, seg, o) for seg, o in chain]
    recs = _fuse_collinear(s, recs)
    return [(seg, o) for seg, o, _, _ in recs]


def _degen_record(s: ElementaryStep, seg: PSSegment, o: int):
    """(segment, orient, departure at traversal start, at traversal end).

    Departures are the directions the curve actually leaves the joint with at
    the deformed configuration; fused elements inherit them, which is what
    decides a detour side when a joint's triple is collinear on both sides."""
    out = degen_segment(s, seg)
    a, b = (seg.i, seg.j) if o == 1 else (seg.j, seg.i)
    dep_start = vsub(s.cfrom[b], s.cfrom[a])
    dep_end = vsub(s.cfrom[a], s.cfrom[b])
    return (out, o, dep_start, dep_end)


def _wedge_side(line_dir, d1, d2) -> int:
    """Side of the line that a nearly-flat wedge spanned by d1, d2 opens to:
    the common sign of the perpendicular tilts of its legs."""
    b1 = sign(cross(line_dir, d1))
    b2 = sign(cross(line_dir, d2))
    if b1 and b2 and b1 != b2:
        raise InternalInvariantViolation("wedge legs tilt to opposite sides")
    cone = b1 or b2
    if not cone:
        raise InternalInvariantViolation("joint wedge did not flatten")
    return cone


def _fused_pair(s: ElementaryStep, r1, r2):
    """Fuse two consecutive degenerated elements when their joint straightens.

    The new side at the joint is the reflex side of the flattening wedge,
    whose legs are the recorded departure directions at the deformed config.
    """
    c1 = s.cto
    s1, s2 = (r1[0], r1[1]), (r2[0], r2[1])
    u, x = _chain_endpoints(s1)
    x2, w = _chain_endpoints(s2)
    if x != x2:
        raise InternalInvariantViolation("chain lost its joints")
    if u == w:
        return None
    pu, px, pw = c1[u], c1[x], c1[w]
    if orientation(pu, px, pw) != 0:
        return None
    if not (
        dot(vsub(px, pu), vsub(pw, pu)) > 0
        and dot(vsub(px, pw), vsub(pu, pw)) > 0
    ):
        return None
    lo, hi = min(u, w), max(u, w)
    d1 = r1[3]  # away from x into the first element
    d2 = r2[2]  # away from x into the second element
    cone = _wedge_side(vsub(c1[hi], c1[lo]), d1, d2)
    joint_side = LEFT if cone < 0 else RIGHT
    sides = dict(s1[0].sides)
    sides.update(dict(s2[0].sides))
    sides[x] = joint_side
    merged = PSSegment(lo, hi, tuple(sorted(sides.items())))
    c1.check_segment(merged)
    return (merged, 1 if u == lo else -1, r1[2], r2[3])


def _fuse_collinear(s: ElementaryStep, chain):
    changed = True
    while changed:
        changed = False
        for t in range(len(chain) - 1):
            merged = _fused_pair(s, chain[t], chain[t + 1])
            if merged is not None:
                chain = chain[:t] + [merged] + chain[t + 2 :]
                changed = True
                break
    return chain


def kappa_step(s: ElementaryStep, v: SupportVector) -> SupportVector:
    """The PL wall-crossing map on support vectors, one step."""
    try:
        from .complexes import check_support

        check_support(s.cfrom, v)
    except Exception as e:
        raise UnsupportedVector(str(e)) from e
    if s.kind == RPP:
        return v
    if s.kind == DEFORM:
        total: dict[PSSegment, Fraction] = {}
        for seg, coef in v.entries:
            for piece, _ in deform_segment(s, seg):
                total[piece] = total.get(piece, Fraction(0)) + coef
        return make_support(total)
    # degeneration: realize as a multi-curve (clearing denominators),
    # transport each component's chain with fusion, add up supports.
    denlcm = 1
    for _, coef in v.entries:
        denlcm = denlcm * coef.denominator // _gcd(denlcm, coef.denominator)
    scaled = v.scale(Fraction(denlcm))
    curves = trace_components(s.cfrom, scaled)
    total = {}
    for comp in curves.components:
        chain = list(comp.chain)
        if hasattr(comp, "start"):
            moved = transport_chain(s, chain)
        else:
            moved = _transport_closed_chain(s, chain)
        for seg, _ in moved:
            total[seg] = total.get(seg, Fraction(0)) + 1
    return make_support({k: Fraction(x, denlcm) for k, x in total.items()})


def _transport_closed_chain(s: ElementaryStep, chain):
    out = [_degen_record(s, seg, o) for seg, o in chain]
    for _ in range(len(out) + 1):
        fused = _fuse_collinear_once_cyclic(s, out)
        if fused is None:
            break
        out = fused
    return [(seg, o) for seg, o, _, _ in out]


def _fuse_collinear_once_cyclic(s: ElementaryStep, chain):
    if len(chain) < 2:
        return None
    m = len(chain)
    for t in range(m):
        merged = _fused_pair(s, chain[t], chain[(t + 1) % m])
        if merged is not None:
            rest = [chain[(t + 2 + k) % m] for k in range(m - 2)]
            return [merged] + rest
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def transport(path: EasyPath, payload):
    """Fold the per-step transport over an easy path.

    The payload is either a SupportVector or an ordered chain of
    (segment, orient) pairs.
    """
    if isinstance(payload, SupportVector):
        for s in path.steps:
            payload = kappa_step(s, payload)
        return payload
    chain = list(payload)
    for s in path.steps:
        chain = transport_chain(s, chain)
    return chain


# ---------------------------------------------------------------------------
# Path compilation
# ---------------------------------------------------------------------------


def _at_time(c: Config, l: int, target, t: Fraction) -> Config:
    pts = list(c.points)
    v = vsub(target, c[l])
    pts[l] = (c[l][0] + t * v[0], c[l][1] + t * v[1])
    return Config(tuple(pts))


def compile_point_move(c: Config, l: int, target) -> EasyPath:
    """Split a straight one-point move at the exact wall-crossing times."""
    target = (Fraction(target[0]), Fraction(target[1]))
    if target == c[l]:
        return EasyPath(())
    if target in c.points:
        raise PathThroughPoint(f"target of point {l} is an occupied position")
    probe = ElementaryStep(c, _at_time(c, l, target, Fraction(1)), l, DEFORM)
    for m in range(len(c)):
        if m != l and _collision_time(probe, m) is not None:
            raise PathThroughPoint(f"point {l} hits point {m}")
    events = set()
    for i, j, k in itertools.combinations(range(len(c)), 3):
        A, B = _orient_poly(probe, i, j, k)
        if B == 0:
            continue
        t = Fraction(-A, B)
        if 0 < t < 1:
            events.add(t)
    ts = [Fraction(0)] + sorted(events) + [Fraction(1)]
    direction = vsub(target, c[l])
    steps = []
    for a, b in zip(ts, ts[1:]):
        ca = _at_time(c, l, target, a)
        cb = _at_time(c, l, target, b)
        wa = _moving_walls(ca, l, direction)
        wb = _moving_walls(cb, l, direction)
        if wa and wb:
            mid = (a + b) / 2
            cm = _at_time(c, l, target, mid)
            steps.append(ElementaryStep(ca, cm, l, DEFORM))
            steps.append(ElementaryStep(cm, cb, l, DEGEN))
        elif wb:
            steps.append(ElementaryStep(ca, cb, l, DEGEN))
        else:
            steps.append(ElementaryStep(ca, cb, l, DEFORM))
    for s in steps:
        if not validate_step(s):
            raise InternalInvariantViolation(f"compiled step fails validation: {s}")
    return EasyPath(tuple(steps))


def _moving_walls(c: Config, l: int, v) -> list:
    """Collinear triples through the mover that the motion direction changes."""
    out = []
    for i, j in itertools.combinations((m for m in range(len(c)) if m != l), 2):
        if orientation(c[i], c[j], c[l]) == 0:
            if cross(vsub(c[j], c[i]), v) != 0:
                out.append((i, j))
    return out


# ---------------------------------------------------------------------------
# Shearing onto the reference line
# ---------------------------------------------------------------------------


def in_upper_fundamental_domain(c: Config) -> bool:
    for i in range(1, len(c)):
        w = vsub(c[i], c[i - 1])
        if not (w[1] > 0 or (w[1] == 0 and w[0] > 0)):
            return False
    return True


def shear_epsilon(c: Config) -> Fraction:
    """A slope such that no connecting line is parallel to the shear line."""
    bound = Fraction(1, 2)
    for i, j in itertools.combinations(range(len(c)), 2):
        w = vsub(c[max(i, j)], c[min(i, j)])
        if w[1] > 0 and w[0] < 0:
            bound = min(bound, Fraction(w[1], -w[0]) / 2)
    return bound


def shear_targets(c: Config, eps: Fraction):
    """Projections of the points along direction (1, -eps) onto the line
    through a_0 with direction (eps, 1)."""
    a0 = c[0]
    betas = []
    for p in c.points:
        w = vsub(p, a0)
        betas.append((eps * w[0] + w[1]) / (1 + eps * eps))
    pts = [(a0[0] + b * eps, a0[1] + b) for b in betas]
    return pts, betas


def shear_path(c: Config) -> EasyPath:
    """An easy path from c to the sheared collinear configuration.

    Implements the almost-horizontal shearing: every point translates along
    the direction (1, -eps).  Points are landed one at a time over a
    subdivision fine enough that every one-point move is certified not to
    cross any wall the simultaneous shear avoids.
    """
    if not in_upper_fundamental_domain(c):
        raise NotInFundamentalDomain("config not in the fundamental domain")
    if c.all_collinear():
        return EasyPath(())
    eps = shear_epsilon(c)
    targets, betas = shear_targets(c, eps)
    ds = [c[i][0] - targets[i][0] for i in range(len(c))]  # displacement along (1,-eps)

    def g(trip, delta):
        i, j, k = trip
        return (betas[j] - betas[i]) * (delta[k] - delta[i]) - (
            betas[k] - betas[i]
        ) * (delta[j] - delta[i])

    triples = list(itertools.combinations(range(len(c)), 3))

    def stage_order(t1: Fraction, t2: Fraction):
        """A point order whose one-at-a-time moves never cross a wall
        strictly inside the stage, or None.  Each move then stays weakly on
        one side of every wall, so the compiled stage is homotopic to the
        simultaneous shear restricted to [t1, t2] by a straight-line
        homotopy through the wall-consistent region."""
        lo = [(1 - t2) * d for d in ds]
        hi = [(1 - t1) * d for d in ds]
        orders = [list(range(len(c))), list(range(len(c) - 1, -1, -1))]
        for first in range(1, len(c)):
            orders.append([first] + [m for m in range(len(c)) if m != first])
        for order in orders:
            delta = list(hi)
            ok = True
            for mv in order:
                delta2 = list(delta)
                delta2[mv] = lo[mv]
                for trip in triples:
                    if mv not in trip:
                        continue
                    if sign(g(trip, delta)) * sign(g(trip, delta2)) == -1:
                        ok = False
                        break
                if not ok:
                    break
                delta = delta2
            if ok:
                return order
        return None

    stages = [(Fraction(0), Fraction(1))]
    plan = []
    guard = 0
    while stages:
        t1, t2 = stages.pop(0)
        order = stage_order(t1, t2)
        if order is None:
            guard += 1
            if guard > 256:
                raise InternalInvariantViolation("shear subdivision did not converge")
            mid = (t1 + t2) / 2
            stages = [(t1, mid), (mid, t2)] + stages
            continue
        plan.append((t2, order))

    path = EasyPath(())
    cur = c
    for t2, order in plan:
        for m in order:
            tgt = (
                targets[m][0] + (1 - t2) * ds[m],
                targets[m][1] - (1 - t2) * ds[m] * eps,
            )
            piece = compile_point_move(cur, m, tgt)
            path = path + piece
            if piece.steps:
                cur = piece.end
    if not cur.all_collinear():
        raise InternalInvariantViolation("shear did not land on a line")
    return path


def reference_config(c: Config) -> Config:
    """The collinear configuration the shear path of c lands on."""
    if c.all_collinear():
        return c
    eps = shear_epsilon(c)
    targets, _ = shear_targets(c, eps)
    return Config(tuple(targets))


# ---------------------------------------------------------------------------
# Braid generator loops
# ---------------------------------------------------------------------------


def braid_generator_path(c: Config, i: int, sgn: int) -> EasyPath:
    """An easy path realizing the half twist swapping points i-1 and i.

    The point i-1 lifts to the sgn-determined side of the segment, the point
    i slides into its place, and the lifted point drops at the vacated spot.
    """
    if not 1 <= i <= c.n:
        raise ValueError("generator index out of range")
    p, q = i - 1, i
    P, Q = c[p], c[q]
    if c.interior_points(p, q):
        raise PathThroughPoint("segment between the swapped points is blocked")
    d = vsub(Q, P)
    # Clockwise normal for the positive generator; calibrated so that the
    # geometric action matches the positive spherical twist.
    perp = (d[1], -d[0])
    if sgn == -1:
        perp = (-perp[0], -perp[1])
    elif sgn != 1:
        raise ValueError("sign must be +1 or -1")
    h = Fraction(1, 2)
    for _ in range(24):
        w = (
            P[0] + d[0] / 2 + h * perp[0],
            P[1] + d[1] / 2 + h * perp[1],
        )
        if _waypoint_clear(c, p, q, w):
            try:
                path = compile_point_move(c, p, w)
                c1 = path.end or c
                path2 = compile_point_move(c1, q, P)
                c2 = path2.end or c1
                path3 = compile_point_move(c2, p, Q)
                return path + path2 + path3
            except PathThroughPoint:
                pass
        h = h / 3
    raise PathThroughPoint("no clear waypoint found")


def _waypoint_clear(c: Config, p: int, q: int, w) -> bool:
    """The triangle P-w-Q must contain no other marked point."""
    P, Q = c[p], c[q]
    if w in c.points:
        return False
    for m in range(len(c)):
        if m in (p, q):
            continue
        o1 = orientation(P, Q, c[m])
        o2 = orientation(Q, w, c[m])
        o3 = orientation(w, P, c[m])
        if o1 >= 0 and o2 >= 0 and o3 >= 0:
            return False
        if o1 <= 0 and o2 <= 0 and o3 <= 0:
            return False
    return True


def swap_labels(c: Config, i: int) -> Config:
    pts = list(c.points)
    pts[i - 1], pts[i] = pts[i], pts[i - 1]
    return Config(tuple(pts))


def relabel_segment(seg: PSSegment, perm: dict[int, int]) -> PSSegment:
    a, b = perm.get(seg.i, seg.i), perm.get(seg.j, seg.j)
    flip = a > b
    lo, hi = (b, a) if flip else (a, b)
    sides = []
    for k, side in seg.sides:
        if flip:
            side = LEFT if side == RIGHT else RIGHT
        sides.append((perm.get(k, k), side))
    return PSSegment(lo, hi, tuple(sorted(sides)))


def relabel_support(v: SupportVector, perm: dict[int, int]) -> SupportVector:
    return make_support({relabel_segment(s, perm): x for s, x in v.entries})


def relabel_chain(chain, perm: dict[int, int]):
    out = []
    for seg, o in chain:
        a = perm.get(seg.i, seg.i)
        b = perm.get(seg.j, seg.j)
        out.append((relabel_segment(seg, perm), o if a < b else -o))
    return out


def braid_step(c: Config, i: int, sgn: int, payload):
    """One generator acting on a payload over the fixed base config c.

    Transports along the half-twist path to the label-swapped configuration
    and relabels back, so generator actions compose at c.
    """
    path = braid_generator_path(c, i, sgn)
    perm = {i - 1: i, i: i - 1}
    moved = transport(path, payload)
    if isinstance(moved, SupportVector):
        return relabel_support(moved, perm)
    return relabel_chain(moved, perm)


def braid_word_action(c: Config, word, payload):
    """Apply a braid word, rightmost generator first."""
    for i, sgn in reversed(list(word)):
        payload = braid_step(c, i, sgn, payload)
    return payload


# ---------------------------------------------------------------------------
# Faux-ppt resolution
# ---------------------------------------------------------------------------


def hash_join(c: Config, u1: PSSegment, u2: PSSegment, x: int, d1, d2) -> PSSegment:
    """Join opposing segments around their shared endpoint on the reflex side."""
    y1 = u1.i if u1.j == x else u1.j
    y2 = u2.i if u2.j == x else u2.j
    lo, hi = min(y1, y2), max(y1, y2)
    cone = _wedge_side(vsub(c[hi], c[lo]), d1, d2)
    side = LEFT if cone < 0 else RIGHT
    sides = dict(u1.sides)
    sides.update(dict(u2.sides))
    sides[x] = side
    out = PSSegment(lo, hi, tuple(sorted(sides.items())))
    c.check_segment(out)
    return out


def _deform_dir_at(s: ElementaryStep, chain, x: int):
    """Direction at the deformed position of x of the deformed chain end."""
    c1 = s.cto
    first_seg, o1 = chain[0]
    last_seg, o2 = chain[-1]
    a0, _ = _chain_endpoints(chain[0])
    _, b1 = _chain_endpoints(chain[-1])
    if a0 == x:
        seg, o = chain[0]
        other = seg.j if o == 1 else seg.i
        return vsub(c1[other], c1[x])
    if b1 == x:
        seg, o = chain[-1]
        other = seg.i if o == 1 else seg.j
        return vsub(c1[other], c1[x])
    raise InternalInvariantViolation("chain not incident at x")


def resolve_faux(s: ElementaryStep, T) -> list[frozenset[PSSegment]]:
    """Resolution tree of degen(T): leaves are the source ppts subdividing T."""
    if s.kind != DEFORM:
        raise ValueError("resolve_faux needs a deformation step")
    rev = s.reverse()
    segs = sorted(T, key=PSSegment.sort_key)
    U0 = [degen_segment(rev, t) for t in segs]
    if len(set(U0)) != len(segs):
        raise SplitFailure("degen not injective on the ppt")
    n = s.cfrom.n

    def deform_chain(u):
        return deform_segment(s, u)

    leaves: list[frozenset[PSSegment]] = []

    def recurse(U: frozenset[PSSegment]):
        pair = _find_extremal_opposing(s, U)
        if pair is None:
            if len(U) != 2 * n - 1 or not is_pointed(U, s.cfrom):
                raise SplitFailure("leaf is not a ppt")
            for a, b in itertools.combinations(U, 2):
                if is_crossing(a, b, s.cfrom):
                    raise SplitFailure("leaf is not non-crossing")
            leaves.append(U)
            return
        u1, u2, x, d1, d2 = pair
        j = hash_join(s.cfrom, u1, u2, x, d1, d2)
        if j in U:
            raise SplitFailure("join already present")
        recurse(U - {u2} | {j})
        recurse(U - {u1} | {j})

    recurse(frozenset(U0))
    uniq = []
    for f in leaves:
        if f not in uniq:
            uniq.append(f)
    if len(uniq) != len(leaves):
        raise SplitFailure("duplicate leaves in the resolution tree")
    return sorted(uniq, key=lambda f: sorted(x.sort_key() for x in f))


def _away_chain(s: ElementaryStep, u: PSSegment, x: int):
    """The deform chain of u oriented to start at the image of x."""
    ch = deform_segment(s, u)
    start, _ = _chain_endpoints(ch[0])
    if start != x:
        ch = [(sg, -o) for sg, o in reversed(ch)]
    return ch


def _leg_far(ch_el):
    _, far = _chain_endpoints(ch_el)
    return far


def _leg_side_local(seg: PSSegment, orient: int, m: int) -> int:
    """Side of the strand at interior point m, in left-of-travel units."""
    stored = 1 if seg.side_map[m] == LEFT else -1
    return stored if orient == 1 else -stored


def _cw_quad(d, e) -> int:
    """Quadrant of the clockwise angle from d to e, each spanning < pi."""
    cr = sign(cross(d, e))
    dt = sign(dot(d, e))
    if cr == 0:
        return 0 if dt > 0 else 2
    if cr < 0:
        return 0 if dt > 0 else 1
    return 2 if dt < 0 else 3


def _cw_less(d, e1, e2) -> bool:
    """Clockwise angle from d to e1 is strictly smaller than to e2."""
    q1, q2 = _cw_quad(d, e1), _cw_quad(d, e2)
    if q1 != q2:
        return q1 < q2
    return cross(e1, e2) < 0


def _lateral_cmp(c1: Config, start: int, chainA, chainB) -> int:
    """Order of two non-crossing strands hugging a common ray from `start`:
    +1 when A runs strictly left of B.  Bends rank nearer the line than a
    passage on the same side; nested bends compare by wrap depth."""
    legA, oA = chainA[0]
    legB, oB = chainB[0]
    farA, farB = _leg_far(chainA[0]), _leg_far(chainB[0])
    d = vsub(c1[farA], c1[start])
    dB = vsub(c1[farB], c1[start])
    if cross(d, dB) != 0 or dot(d, dB) <= 0:
        raise InternalInvariantViolation("strands do not share a ray")
    pts = [
        k
        for k in range(len(c1))
        if k != start
        and cross(d, vsub(c1[k], c1[start])) == 0
        and dot(d, vsub(c1[k], c1[start])) > 0
    ]
    pts.sort(key=lambda k: dot(vsub(c1[k], c1[start]), d))

    def feature(chain, m):
        seg, o = chain[0]
        far = _leg_far(chain[0])
        if m in seg.side_map:
            return ("pass", _leg_side_local(seg, o, m), None)
        if m == far:
            if len(chain) == 1:
                return ("end", 0, None)
            nxt = chain[1]
            nfar = _leg_far(nxt)
            e = vsub(c1[nfar], c1[m])
            t2 = sign(cross(d, e))
            if t2 == 0:
                raise InternalInvariantViolation("straight or doubled joint")
            return ("bend", -t2, e)
        raise InternalInvariantViolation("ray point missing from the strand")

    def key(f):
        kind, v, _ = f
        if kind == "pass":
            return (v, 0)
        if kind == "end":
            return (0, 0)
        return (v, -v)  # bend hugs the line tighter than a passage

    for m in pts:
        fA = feature(chainA, m)
        fB = feature(chainB, m)
        if key(fA) != key(fB):
            return 1 if key(fA) > key(fB) else -1
        if fA[0] == "end":
            raise InternalInvariantViolation("distinct strands coincide")
        if fA[0] == "bend":
            v = fA[1]
            eA, eB = fA[2], fB[2]
            if cross(eA, eB) == 0 and dot(eA, eB) > 0:
                # same exit ray: recurse past the bend; order flips around it
                return -_lateral_cmp(c1, m, chainA[1:], chainB[1:])
            # both wrap m on side v; the deeper wrap is the inner strand,
            # which hugs the line: greater on the right side, lesser on the
            # left.  Wrap depth is the rotation from d to the exit through
            # the detour side: clockwise when v = -1.
            if v == -1:
                a_deeper = _cw_less(d, eB, eA)
                return 1 if a_deeper else -1
            a_deeper = _cw_less(d, eA, eB)
            return -1 if a_deeper else 1
    raise InternalInvariantViolation("strands never diverge")


def _find_extremal_opposing(s: ElementaryStep, U):
    c0 = s.cfrom
    items = sorted(U, key=PSSegment.sort_key)
    for u1, u2 in itertools.combinations(items, 2):
        shared = set(u1.endpoints()) & set(u2.endpoints())
        for x in shared:
            y1 = u1.i if u1.j == x else u1.j
            y2 = u2.i if u2.j == x else u2.j
            if orientation(c0[y1], c0[x], c0[y2]) != 0:
                continue
            if not (
                dot(vsub(c0[x], c0[y1]), vsub(c0[y2], c0[y1])) > 0
                and dot(vsub(c0[x], c0[y2]), vsub(c0[y1], c0[y2])) > 0
            ):
                continue  # x not between: not opposing
            ch1 = deform_segment(s, u1)
            ch2 = deform_segment(s, u2)
            d1 = _deform_dir_at(s, ch1, x)
            d2 = _deform_dir_at(s, ch2, x)
            if cross(d1, d2) == 0:
                continue  # spines stay collinear around x
            if _pair_is_extremal(s, U, u1, u2, x, d1, d2):
                return u1, u2, x, d1, d2
    return None


def _pair_is_extremal(s, U, u1, u2, x, d1, d2) -> bool:
    gamma = cross(d1, d2)
    if gamma > 0:
        lo_edge, hi_edge, lo, hi = u1, u2, d1, d2
    else:
        lo_edge, hi_edge, lo, hi = u2, u1, d2, d1
    c1 = s.cto
    xpos = {u1.i, u1.j} & {u2.i, u2.j}
    for u in U:
        if u in (u1, u2) or x not in u.endpoints():
            continue
        dv = _deform_dir_at(s, _away_chain(s, u, x), x)
        same_lo = cross(lo, dv) == 0 and dot(lo, dv) > 0
        same_hi = cross(hi, dv) == 0 and dot(hi, dv) > 0
        if same_lo:
            # tied with the low boundary: the cone interior is to its left,
            # so the tied strand must run strictly left of the boundary edge
            cmp = _lateral_cmp(c1, x, _away_chain(s, u, x), _away_chain(s, lo_edge, x))
            if cmp <= 0:
                return False
            continue
        if same_hi:
            cmp = _lateral_cmp(c1, x, _away_chain(s, u, x), _away_chain(s, hi_edge, x))
            if cmp >= 0:
                return False
            continue
        if not (cross(lo, dv) > 0 and cross(dv, hi) > 0):
            return False
    return True
