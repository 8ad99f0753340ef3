import itertools
import random

import pytest

from helpers import C3L, C3T, C4L, C4S, random_config
from pptsphere.complexes import (
    ArcComponent,
    ClosedComponent,
    build_complex,
    complex_stats,
    enumerate_ppt_stars,
    enumerate_ppts,
    make_support,
    multicurve_from_support,
    multicurve_support,
    trace_components,
)
from pptsphere.errors import NotNonCrossing, NotPointed
from pptsphere.geom import (
    external_edges,
    is_crossing,
    is_pointed,
    make_segment,
    enumerate_pseudo_straight,
)


def test_ppts_examples():
    assert len(enumerate_ppts(C3T)) == 1
    ppts = enumerate_ppts(C3L)
    assert len(ppts) == 2
    families = {frozenset(p.segments) for p in ppts}
    sL, sR = make_segment(0, 2, {1: "L"}), make_segment(0, 2, {1: "R"})
    assert families == {
        frozenset({make_segment(0, 1), sL, sR}),
        frozenset({make_segment(1, 2), sL, sR}),
    }
    ppts = enumerate_ppts(C4S)
    assert len(ppts) == 2 and all(len(p.segments) == 5 for p in ppts)


def test_ppt_stars_examples():
    assert len(enumerate_ppt_stars(C3T)) == 3
    assert len(enumerate_ppt_stars(C3L)) == 4
    assert len(enumerate_ppt_stars(C4S)) == 8


def test_every_ppt_contains_external_edges():
    rng = random.Random(3)
    for style in ("generic", "partial", "collinear"):
        c = random_config(rng, 4, style)
        ext = set(external_edges(c))
        for p in enumerate_ppts(c):
            assert ext <= p.segments


def test_cardinalities_random():
    rng = random.Random(4)
    for style in ("generic", "partial", "collinear"):
        for npts in (2, 3, 4):
            c = random_config(rng, npts, style)
            n = c.n
            for p in enumerate_ppts(c):
                assert len(p.segments) == 2 * n - 1
            for p in enumerate_ppt_stars(c):
                assert len(p.segments) == 2 * n - 2


def test_facets_are_noncrossing_pointed():
    rng = random.Random(5)
    c = random_config(rng, 4, "partial")
    for p in enumerate_ppts(c):
        segs = sorted(p.segments, key=lambda s: s.sort_key())
        assert is_pointed(segs, c)
        for a, b in itertools.combinations(segs, 2):
            assert not is_crossing(a, b, c)


def test_build_complex_examples():
    x = build_complex(C3T, "Kstar")
    st = complex_stats(x)
    assert st.f_vector == (3, 3) and st.homology == (1, 1)
    x = build_complex(C3L, "Kstar")
    st = complex_stats(x)
    assert st.f_vector == (4, 4) and st.euler == 0 and st.homology == (1, 1)
    x = build_complex(C3T, "K")
    assert len(x.facets) == 1 and len(x.facets[0]) == 3


def test_kstar_subcomplex_of_k():
    rng = random.Random(6)
    c = random_config(rng, 4, "generic")
    k = build_complex(c, "K")
    ks = build_complex(c, "Kstar")
    kf = {frozenset(k.vertices[v] for v in f) for f in k.facets}
    for f in ks.facets:
        fs = frozenset(ks.vertices[v] for v in f)
        assert any(fs < g and len(g) == len(fs) + 1 for g in kf)


def test_complex_stats_examples():
    st = complex_stats(build_complex(C3L, "K"))
    assert st.f_vector == (4, 5, 2) and st.euler == 1
    st = complex_stats(build_complex(C4S, "Kstar"))
    assert st.homology == (1, 0, 0, 1) and st.pseudomanifold


def test_sphere_and_ball_small():
    rng = random.Random(7)
    for style in ("generic", "collinear"):
        for npts in (3, 4):
            c = random_config(rng, npts, style)
            n = c.n
            st = complex_stats(build_complex(c, "Kstar"))
            expect = [0] * (2 * n - 2)
            expect[0] = 1
            expect[-1] = 1
            assert list(st.homology) == expect
            assert st.pseudomanifold
            stk = complex_stats(build_complex(c, "K"))
            assert stk.euler == 1
            assert list(stk.homology) == [1] + [0] * (len(stk.homology) - 1)


def test_multicurve_examples():
    v = make_support({make_segment(0, 1): 1})
    m = multicurve_from_support(C3T, v)
    assert len(m.components) == 1 and isinstance(m.components[0], ArcComponent)

    v = make_support({make_segment(0, 1): 2})
    m = multicurve_from_support(C3T, v)
    (comp,) = m.components
    assert isinstance(comp, ClosedComponent) and not comp.boundary_parallel

    v = make_support({make_segment(0, 1): 1, make_segment(1, 2): 1})
    (comp,) = multicurve_from_support(C3T, v).components
    assert isinstance(comp, ArcComponent)
    assert (comp.start, comp.end) == (0, 2)


def test_boundary_parallel_flag():
    for c in (C3L, C3T, C4S):
        v = make_support({e: 1 for e in external_edges(c)})
        (comp,) = multicurve_from_support(c, v).components
        assert isinstance(comp, ClosedComponent) and comp.boundary_parallel


def test_multicurve_rejects_bad_support():
    with pytest.raises(NotPointed):
        multicurve_from_support(
            C3L, make_support({make_segment(0, 1): 1, make_segment(1, 2): 1})
        )
    with pytest.raises(NotNonCrossing):
        multicurve_from_support(
            C4S, make_support({make_segment(0, 2): 1, make_segment(1, 3): 1})
        )


def test_multicurve_roundtrip_random():
    rng = random.Random(8)
    for style in ("generic", "partial", "collinear"):
        c = random_config(rng, 4, style)
        stars = enumerate_ppt_stars(c)
        for _ in range(15):
            star = stars[rng.randrange(len(stars))]
            d = {s: rng.randint(0, 3) for s in star.segments}
            d = {s: k for s, k in d.items() if k}
            if not d:
                continue
            v = make_support(d)
            m = multicurve_from_support(c, v)
            assert multicurve_support(m).entries == v.entries


def test_rational_points_of_kstar_realized():
    # integral lifts of rational points of |K*| are exactly multi-curve
    # supports: realized and admissible (no boundary-parallel component)
    rng = random.Random(9)
    c = random_config(rng, 4, "partial")
    stars = enumerate_ppt_stars(c)
    for _ in range(10):
        star = stars[rng.randrange(len(stars))]
        d = {s: rng.randint(0, 2) for s in star.segments}
        d = {s: k for s, k in d.items() if k}
        if not d:
            continue
        m = multicurve_from_support(c, make_support(d))
        for comp in m.components:
            assert not getattr(comp, "boundary_parallel", False)
