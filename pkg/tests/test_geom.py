import itertools
import random

import pytest

from helpers import C3L, C3T, C3U, C4L, C4S, random_config
from pptsphere.errors import InvalidSegment
from pptsphere.geom import (
    Config,
    PSSegment,
    config,
    enumerate_pseudo_straight,
    external_edges,
    is_crossing,
    is_pointed,
    make_segment,
    orientation,
    segment_vector,
)


def test_orientation_signs():
    assert orientation((0, 0), (1, 0), (2, 0)) == 0
    assert orientation((0, 0), (1, 0), (1, 1)) == 1
    assert orientation((0, 0), (0, 1), (1, 1)) == -1


def test_enumerate_counts():
    segs = enumerate_pseudo_straight(C3L)
    assert len(segs) == 4
    assert segs == [
        make_segment(0, 1),
        make_segment(0, 2, {1: "L"}),
        make_segment(0, 2, {1: "R"}),
        make_segment(1, 2),
    ]
    assert len(enumerate_pseudo_straight(C3T)) == 3
    # 4 equally spaced collinear: 3 + 2*2 + 4 = 11
    assert len(enumerate_pseudo_straight(C4L)) == 11


def test_enumerate_count_formula_random():
    rng = random.Random(2)
    for style in ("generic", "partial", "collinear"):
        c = random_config(rng, 5, style)
        segs = enumerate_pseudo_straight(c)
        expected = sum(
            2 ** len(c.interior_points(i, j))
            for i, j in itertools.combinations(range(len(c)), 2)
        )
        assert len(segs) == expected


def test_crossing_examples():
    sL = make_segment(0, 2, {1: "L"})
    sR = make_segment(0, 2, {1: "R"})
    assert not is_crossing(sL, sR, C3L)
    assert is_crossing(
        make_segment(0, 2, {1: "L"}), make_segment(1, 3, {2: "L"}), C4L
    )
    assert is_crossing(make_segment(0, 2), make_segment(1, 3), C4S)


def test_crossing_shared_marked_point_different_lines():
    # two segments through a common interior marked point always cross
    c = config([(0, 0), (1, 1), (2, 2), (0, 2), (2, 0)])
    s = make_segment(0, 2, {1: "L"})
    t = make_segment(3, 4, {1: "L"})
    assert is_crossing(s, t, c)
    t2 = make_segment(3, 4, {1: "R"})
    assert is_crossing(s, t2, c)


def test_crossing_endpoint_under_detour():
    # a segment leaving an interior marked point toward the swerve side is
    # pinned under the detour
    c = config([(0, 0), (1, 0), (2, 0), (3, 1), (1, 2), (4, 0)])
    up = make_segment(1, 3)
    assert is_crossing(make_segment(0, 2, {1: "L"}), up, c)
    assert not is_crossing(make_segment(0, 2, {1: "R"}), up, c)


def test_crossing_symmetric_and_irreflexive():
    rng = random.Random(5)
    for style in ("generic", "partial", "collinear"):
        c = random_config(rng, 4, style)
        segs = enumerate_pseudo_straight(c)
        for s in segs:
            assert not is_crossing(s, s, c)
        for s, t in itertools.combinations(segs, 2):
            assert is_crossing(s, t, c) == is_crossing(t, s, c)


def test_invalid_segment_rejected():
    with pytest.raises(InvalidSegment):
        is_crossing(make_segment(0, 2), make_segment(0, 1), C3L)


def test_pointed_examples():
    assert not is_pointed([make_segment(0, 1), make_segment(1, 2)], C3L)
    assert is_pointed(
        [make_segment(0, 1), make_segment(1, 2), make_segment(0, 2)], C3T
    )
    assert is_pointed([], C3L)


def test_pointedness_not_pairwise():
    # three directions at mutual angles > pi/2: pairwise pointed, jointly not
    c = config([(0, 0), (2, 0), (-1, 2), (-1, -2)])
    segs = [make_segment(0, 1), make_segment(0, 2), make_segment(0, 3)]
    for a, b in itertools.combinations(segs, 2):
        assert is_pointed([a, b], c)
    assert not is_pointed(segs, c)


def test_pointed_downward_closed():
    rng = random.Random(7)
    c = random_config(rng, 5, "partial")
    segs = enumerate_pseudo_straight(c)
    for _ in range(30):
        sub = rng.sample(segs, rng.randint(2, min(6, len(segs))))
        if is_pointed(sub, c):
            smaller = rng.sample(sub, len(sub) - 1)
            assert is_pointed(smaller, c)


def test_external_edges_examples():
    assert external_edges(C3T) == sorted(
        [make_segment(0, 1), make_segment(1, 2), make_segment(0, 2)],
        key=PSSegment.sort_key,
    )
    assert external_edges(C3L) == [
        make_segment(0, 2, {1: "L"}),
        make_segment(0, 2, {1: "R"}),
    ]
    assert external_edges(C4S) == sorted(
        [make_segment(0, 1), make_segment(1, 2), make_segment(2, 3), make_segment(0, 3)],
        key=PSSegment.sort_key,
    )


def test_external_edges_noncrossing_pointed():
    rng = random.Random(9)
    for style in ("generic", "partial", "collinear"):
        for npts in (3, 4, 5):
            c = random_config(rng, npts, style)
            ext = external_edges(c)
            assert is_pointed(ext, c)
            for a, b in itertools.combinations(ext, 2):
                assert not is_crossing(a, b, c)


def test_segment_vector():
    assert segment_vector(C3L, make_segment(0, 1)) == (1, 0)
    assert segment_vector(C3U, make_segment(0, 2)) == (1, 1)
    assert segment_vector(C3L, make_segment(0, 2, {1: "L"})) == (2, 0)


def _transform(c: Config, f):
    return Config(tuple(f(p) for p in c.points))


def test_predicates_invariant_under_similarity():
    rng = random.Random(13)
    c = random_config(rng, 4, "partial")
    transforms = [
        lambda p: (p[0] + 3, p[1] - 2),
        lambda p: (-p[1], p[0]),  # rotate 90
        lambda p: (2 * p[0], 2 * p[1]),
    ]
    segs = enumerate_pseudo_straight(c)
    for f in transforms:
        c2 = _transform(c, f)
        segs2 = enumerate_pseudo_straight(c2)
        assert segs == segs2
        for s, t in itertools.combinations(segs, 2):
            assert is_crossing(s, t, c) == is_crossing(s, t, c2)
        for _ in range(10):
            sub = rng.sample(segs, 3)
            assert is_pointed(sub, c) == is_pointed(sub, c2)
