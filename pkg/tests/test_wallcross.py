import itertools
import random

import pytest
from fractions import Fraction

from helpers import C3L, C3T, C3Tdown, C3U, random_config, random_updomain_config
from pptsphere.complexes import enumerate_ppt_stars, enumerate_ppts, make_support
from pptsphere.errors import NotInFundamentalDomain, PathThroughPoint
from pptsphere.geom import config, enumerate_pseudo_straight, make_segment
from pptsphere.wallcross import (
    DEFORM,
    DEGEN,
    RPP,
    EasyPath,
    ElementaryStep,
    braid_generator_path,
    braid_word_action,
    compile_point_move,
    deform_segment,
    degen_segment,
    in_upper_fundamental_domain,
    kappa_step,
    reference_config,
    resolve_faux,
    shear_path,
    swap_labels,
    transport,
    validate_step,
)

STEP = ElementaryStep(C3L, C3Tdown, 1, DEFORM)


def test_validate_step_examples():
    assert validate_step(STEP)
    assert validate_step(
        ElementaryStep(C3T, config([(0, 0), (1, 0), (2, 0)]), 1, DEGEN)
    )
    # moving through the wall and beyond is neither a deformation nor a
    # degeneration
    bad = ElementaryStep(C3T, C3Tdown, 1, DEFORM)
    assert not validate_step(bad)
    assert not validate_step(ElementaryStep(C3T, C3Tdown, 1, DEGEN))


def test_validate_rpp():
    slide = ElementaryStep(C3L, config([(0, 0), (Fraction(1, 2), 0), (2, 0)]), 1, RPP)
    assert validate_step(slide)
    assert not validate_step(ElementaryStep(C3L, C3Tdown, 1, RPP))


def test_degen_segment_examples():
    rev = STEP.reverse()
    assert degen_segment(rev, make_segment(0, 2)) == make_segment(0, 2, {1: "L"})
    assert degen_segment(rev, make_segment(0, 1)) == make_segment(0, 1)
    assert degen_segment(rev, make_segment(1, 2)) == make_segment(1, 2)


def test_deform_segment_examples():
    assert deform_segment(STEP, make_segment(0, 2, {1: "L"})) == [
        (make_segment(0, 2), 1)
    ]
    assert deform_segment(STEP, make_segment(0, 2, {1: "R"})) == [
        (make_segment(0, 1), 1),
        (make_segment(1, 2), 1),
    ]
    assert deform_segment(STEP, make_segment(0, 1)) == [(make_segment(0, 1), 1)]


def test_kappa_examples():
    sR = make_segment(0, 2, {1: "R"})
    sL = make_segment(0, 2, {1: "L"})
    assert kappa_step(STEP, make_support({sR: 1})) == make_support(
        {make_segment(0, 1): 1, make_segment(1, 2): 1}
    )
    v = make_support({make_segment(0, 1): 2})
    assert kappa_step(STEP, v) == v
    assert kappa_step(STEP, make_support({sL: 1, sR: 1})) == make_support(
        {make_segment(0, 2): 1, make_segment(0, 1): 1, make_segment(1, 2): 1}
    )


def test_kappa_roundtrip_basis():
    rev = STEP.reverse()
    for s in enumerate_pseudo_straight(C3L):
        v = make_support({s: 1})
        assert kappa_step(rev, kappa_step(STEP, v)) == v
    for s in enumerate_pseudo_straight(C3Tdown):
        v = make_support({s: 1})
        assert kappa_step(STEP, kappa_step(rev, v)) == v


def test_kappa_linear_on_simplices():
    rng = random.Random(2)
    ppts = enumerate_ppts(C3L)
    for p in ppts:
        segs = sorted(p.segments, key=lambda s: s.sort_key())
        for _ in range(10):
            coeffs = [Fraction(rng.randint(0, 5), rng.randint(1, 3)) for _ in segs]
            if not any(coeffs):
                continue
            v = make_support({s: c for s, c in zip(segs, coeffs) if c})
            image = kappa_step(STEP, v)
            parts = {}
            for s, c in zip(segs, coeffs):
                if not c:
                    continue
                for t, x in kappa_step(STEP, make_support({s: c})).entries:
                    parts[t] = parts.get(t, Fraction(0)) + x
            assert make_support(parts) == image


def test_kappa_random_steps_roundtrip():
    rng = random.Random(3)
    done = 0
    while done < 8:
        c = random_config(rng, 4, rng.choice(["partial", "collinear"]))
        l = rng.randrange(len(c))
        target = (
            c[l][0] + Fraction(rng.randint(-3, 3), 2),
            c[l][1] + Fraction(rng.randint(-3, 3), 2),
        )
        if target in c.points or target == c[l]:
            continue
        try:
            path = compile_point_move(c, l, target)
        except PathThroughPoint:
            continue
        steps = [s for s in path.steps if s.kind == DEFORM and validate_step(s)]
        if not steps:
            continue
        step = steps[0]
        stars = enumerate_ppt_stars(step.cfrom)
        for _ in range(10):
            star = stars[rng.randrange(len(stars))]
            d = {
                s: Fraction(rng.randint(0, 4), rng.randint(1, 2))
                for s in star.segments
            }
            d = {s: k for s, k in d.items() if k}
            if not d:
                continue
            v = make_support(d)
            w = kappa_step(step, v)
            assert kappa_step(step.reverse(), w) == v
        done += 1


def test_compile_point_move():
    path = compile_point_move(C3Tdown, 1, (1, 1))
    assert [s.kind for s in path.steps] == [DEGEN, DEFORM]
    path = compile_point_move(C3Tdown, 1, (1, Fraction(-2)))
    assert [s.kind for s in path.steps] == [DEFORM]
    with pytest.raises(PathThroughPoint):
        compile_point_move(C3L, 0, (2, 0))
    # crossing at least two distinct walls -> alternating degen/deform pairs
    c = config([(0, 0), (4, 0), (2, 2), (2, -2), (1, 5)])
    path = compile_point_move(c, 4, (4, -5))
    kinds = [s.kind for s in path.steps]
    assert kinds.count(DEGEN) >= 2 and len(path.steps) >= 4


def test_transport_identity_and_composition():
    assert transport(EasyPath(()), make_support({make_segment(0, 1): 1})).entries
    path = compile_point_move(C3L, 1, (1, -1)) + compile_point_move(C3Tdown, 1, (1, 0))
    for s in enumerate_pseudo_straight(C3L):
        v = make_support({s: 1})
        assert transport(path, v) == v


def test_fig1_composite():
    # triangle -> collinear -> opposite triangle, on the three left ppts
    up = config([(0, 0), (1, 1), (2, 0)])
    path = compile_point_move(up, 1, (1, -1))
    assert [s.kind for s in path.steps] == [DEGEN, DEFORM]
    ups = {s: kappa_step(path.steps[0], make_support({s: 1})) for s in enumerate_pseudo_straight(up)}
    assert ups[make_segment(0, 2)] == make_support({make_segment(0, 2, {1: "R"}): 1})
    out = transport(path, make_support({make_segment(0, 2): 1}))
    assert out == make_support({make_segment(0, 1): 1, make_segment(1, 2): 1})


def test_resolve_faux_examples():
    T = list(enumerate_ppts(C3Tdown))[0].segments
    leaves = resolve_faux(STEP, T)
    key = lambda f: sorted(s.sort_key() for s in f)
    assert sorted(map(key, leaves)) == sorted(
        key(p.segments) for p in enumerate_ppts(C3L)
    )


def test_resolve_faux_trivial():
    # deformation with no critical line: degen(T) is already a ppt
    c0 = config([(0, 0), (1, 1), (2, 0)])
    c1 = config([(0, 0), (1, 2), (2, 0)])
    step = ElementaryStep(c0, c1, 1, DEFORM)
    assert validate_step(step)
    T = list(enumerate_ppts(c1))[0].segments
    leaves = resolve_faux(step, T)
    assert len(leaves) == 1


def test_resolve_faux_four_points():
    # raising one point of a 4-collinear configuration: resolution leaves are
    # exactly the source ppts whose images live in |T|
    c0 = config([(0, 0), (1, 0), (2, 0), (3, 0)])
    c1 = config([(0, 0), (1, 0), (2, 1), (3, 0)])
    step = ElementaryStep(c0, c1, 2, DEFORM)
    assert validate_step(step)
    all_leaves = set()
    for T in enumerate_ppts(c1):
        for leaf in resolve_faux(step, T.segments):
            all_leaves.add(leaf)
    assert all_leaves == {p.segments for p in enumerate_ppts(c0)}


def test_shear_path_examples():
    assert shear_path(C3L).steps == ()
    sp = shear_path(C3U)
    ref = reference_config(C3U)
    assert ref.all_collinear() and sp.end == ref
    with pytest.raises(NotInFundamentalDomain):
        shear_path(C3T)


def test_shear_transport_roundtrip():
    rng = random.Random(4)
    for npts in (3, 4):
        c = random_updomain_config(rng, npts)
        sp = shear_path(c)
        if not sp.steps:
            continue
        segs = enumerate_pseudo_straight(c)
        for s in segs:
            v = make_support({s: 1})
            assert transport(sp.reverse(), transport(sp, v)) == v


def test_braid_half_twist_fixes_own_arc():
    R2 = C3L
    v = make_support({make_segment(0, 1): 1})
    assert braid_word_action(R2, [(1, 1)], v) == v
    assert braid_word_action(R2, [(1, -1)], v) == v


def test_braid_roundtrip_and_relation():
    R2 = C3L
    rng = random.Random(5)
    segs = enumerate_pseudo_straight(R2)
    for s in segs:
        v = make_support({s: 1})
        assert braid_word_action(R2, [(1, 1), (1, -1)], v) == v
        assert braid_word_action(R2, [(2, -1), (2, 1)], v) == v
        a = braid_word_action(R2, [(1, 1), (2, 1), (1, 1)], v)
        b = braid_word_action(R2, [(2, 1), (1, 1), (2, 1)], v)
        assert a == b


def test_braid_sigma1_on_neighbor_segment():
    out = braid_word_action(C3L, [(1, 1)], make_support({make_segment(1, 2): 1}))
    outm = braid_word_action(C3L, [(1, -1)], make_support({make_segment(1, 2): 1}))
    assert {out, outm} == {
        make_support({make_segment(0, 2, {1: "L"}): 1}),
        make_support({make_segment(0, 2, {1: "R"}): 1}),
    }


def test_braid_generator_path_ends_swapped():
    p = braid_generator_path(C3L, 1, 1)
    assert p.end == swap_labels(C3L, 1)


def test_homotopic_compilations_agree():
    # two easy paths between the same endpoints, homotopic through small
    # waypoint wiggles, transport supports equally
    c = C3L
    w1 = (Fraction(1), Fraction(1, 2))
    w2 = (Fraction(5, 4), Fraction(1, 2))
    tgt = (Fraction(1), Fraction(1))
    p1 = compile_point_move(c, 1, w1)
    p1b = compile_point_move(p1.end, 1, tgt)
    p2 = compile_point_move(c, 1, w2)
    p2b = compile_point_move(p2.end, 1, tgt)
    pathA = p1 + p1b
    pathB = p2 + p2b
    for s in enumerate_pseudo_straight(c):
        v = make_support({s: 1})
        assert transport(pathA, v) == transport(pathB, v)
