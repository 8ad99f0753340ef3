"""Shared test utilities: seeded random configurations and small fixtures."""

from __future__ import annotations

import random
from fractions import Fraction

from pptsphere.geom import Config, config, orientation


C3L = config([(0, 0), (1, 0), (2, 0)])
C3T = config([(0, 0), (1, 1), (2, 0)])
C3Tdown = config([(0, 0), (1, -1), (2, 0)])
C3U = config([(0, 0), (0, 1), (1, 1)])
C4S = config([(0, 0), (1, 0), (1, 1), (0, 1)])
C4L = config([(0, 0), (1, 0), (2, 0), (3, 0)])


def rand_point(rng, spread=8):
    return (
        Fraction(rng.randint(-spread, spread), rng.randint(1, 2)),
        Fraction(rng.randint(-spread, spread), rng.randint(1, 2)),
    )


def random_config(rng: random.Random, npts: int, style: str) -> Config:
    """A random configuration: 'generic' (no 3 collinear), 'partial'
    (at least one collinear triple), or 'collinear' (all on a line)."""
    while True:
        if style == "collinear":
            d = (Fraction(rng.randint(1, 3)), Fraction(rng.randint(-2, 2)))
            base = rand_point(rng)
            ts = set()
            while len(ts) < npts:
                ts.add(Fraction(rng.randint(-8, 8), rng.randint(1, 2)))
            pts = [(base[0] + t * d[0], base[1] + t * d[1]) for t in sorted(ts)]
        else:
            pts = []
            tries = 0
            while len(pts) < npts and tries < 400:
                tries += 1
                p = rand_point(rng)
                if p in pts:
                    continue
                pts.append(p)
            if len(pts) < npts:
                continue
            if style == "generic":
                bad = any(
                    orientation(pts[i], pts[j], pts[k]) == 0
                    for i in range(npts)
                    for j in range(i + 1, npts)
                    for k in range(j + 1, npts)
                )
                if bad:
                    continue
            elif style == "partial" and npts >= 3:
                t = Fraction(rng.randint(1, 3), 4)
                mid = (
                    pts[0][0] + t * (pts[1][0] - pts[0][0]),
                    pts[0][1] + t * (pts[1][1] - pts[0][1]),
                )
                if mid in pts:
                    continue
                pts[2] = mid
        try:
            return config(pts)
        except ValueError:
            continue


def random_updomain_config(rng: random.Random, npts: int, generic=False) -> Config:
    """A configuration in the fundamental domain (consecutive charges in H)."""
    while True:
        pts = [(Fraction(0), Fraction(0))]
        for _ in range(npts - 1):
            while True:
                dy = Fraction(rng.randint(0, 5), rng.randint(1, 2))
                dx = Fraction(rng.randint(-5, 5), rng.randint(1, 2))
                if dy > 0 or (dy == 0 and dx > 0):
                    break
            last = pts[-1]
            pts.append((last[0] + dx, last[1] + dy))
        if len(set(pts)) != npts:
            continue
        c = config(pts)
        if generic:
            bad = any(
                orientation(c[i], c[j], c[k]) == 0
                for i in range(npts)
                for j in range(i + 1, npts)
                for k in range(j + 1, npts)
            )
            if bad:
                continue
        return c
