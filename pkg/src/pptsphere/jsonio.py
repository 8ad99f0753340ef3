"""JSON encoding and decoding for all the wire formats.

Rationals travel as "num/den" strings so fixtures are diffable and exact.
"""

from __future__ import annotations

from fractions import Fraction

from .complexes import SimplicialComplex, SupportVector, make_support
from .errors import SchemaError
from .geom import Config, PSSegment
from .kscat import DgComplex, Generator, make_complex
from .refarcs import ReferenceArc, validate_arc
from .wallcross import DEFORM, DEGEN, RPP, EasyPath, ElementaryStep


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise SchemaError(f"bad rational {s!r}") from e


def config_to_json(c: Config) -> dict:
    return {"points": [[frac_str(x), frac_str(y)] for x, y in c.points]}


def config_from_json(d) -> Config:
    try:
        pts = tuple((parse_frac(x), parse_frac(y)) for x, y in d["points"])
        return Config(pts)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad config: {e}") from e


def segment_to_json(s: PSSegment) -> dict:
    return {"i": s.i, "j": s.j, "sides": {str(k): v for k, v in s.sides}}


def segment_from_json(d) -> PSSegment:
    try:
        sides = tuple(sorted((int(k), v) for k, v in d.get("sides", {}).items()))
        return PSSegment(int(d["i"]), int(d["j"]), sides)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad segment: {e}") from e


def support_to_json(v: SupportVector) -> dict:
    return {
        "entries": [
            {"seg": segment_to_json(s), "coeff": frac_str(x)} for s, x in v.entries
        ]
    }


def support_from_json(d) -> SupportVector:
    try:
        return make_support(
            {segment_from_json(e["seg"]): parse_frac(e["coeff"]) for e in d["entries"]}
        )
    except (KeyError, TypeError) as e:
        raise SchemaError(f"bad support: {e}") from e


def complex_to_json(x: SimplicialComplex) -> dict:
    out = {
        "vertices": [segment_to_json(s) for s in x.vertices],
        "facets": [sorted(f) for f in x.facets],
    }
    if x.labels:
        out["labels"] = list(x.labels)
    return out


def arc_to_json(a: ReferenceArc) -> dict:
    return {
        "start": a.start,
        "end": a.end,
        "crossings": list(a.crossings),
        "turns": list(a.turns),
    }


def arc_from_json(d) -> ReferenceArc:
    try:
        a = ReferenceArc(
            int(d["start"]),
            int(d["end"]),
            tuple(int(c) for c in d["crossings"]),
            tuple(d["turns"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad arc: {e}") from e
    validate_arc(a)
    return a


def step_to_json(s: ElementaryStep) -> dict:
    return {
        "kind": s.kind,
        "moving": s.moving,
        "from": config_to_json(s.cfrom),
        "to": config_to_json(s.cto),
    }


def step_from_json(d) -> ElementaryStep:
    try:
        kind = d["kind"]
        if kind not in (DEFORM, DEGEN, RPP):
            raise SchemaError(f"bad step kind {kind!r}")
        return ElementaryStep(
            config_from_json(d["from"]), config_from_json(d["to"]), int(d["moving"]), kind
        )
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad step: {e}") from e


def path_to_json(p: EasyPath) -> dict:
    return {"steps": [step_to_json(s) for s in p.steps]}


def path_from_json(d) -> EasyPath:
    try:
        return EasyPath(tuple(step_from_json(s) for s in d["steps"]))
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad path: {e}") from e


def parse_braid_word(s: str) -> list[tuple[int, int]]:
    """Words like 's1 s2^-1 s1'."""
    out = []
    for tok in s.split():
        if not tok.startswith("s"):
            raise SchemaError(f"bad braid letter {tok!r}")
        body = tok[1:]
        if "^" in body:
            idx, exp = body.split("^", 1)
            if exp not in ("-1", "1"):
                raise SchemaError(f"bad exponent in {tok!r}")
            out.append((int(idx), int(exp)))
        else:
            out.append((int(body), 1))
    return out


def braid_word_str(word) -> str:
    return " ".join(f"s{i}" if s == 1 else f"s{i}^-1" for i, s in word)


def path_str(p) -> str:
    if len(p) == 1:
        return f"e_{p[0]}"
    if len(p) == 2:
        return f"edge_{p[0]}{p[1]}"
    return f"loop_{p[0]}"


def parse_path(s: str, n: int):
    if s.startswith("e_"):
        return (int(s[2:]),)
    if s.startswith("edge_"):
        body = s[5:]
        return (int(body[0]), int(body[1]))
    if s.startswith("loop_"):
        v = int(s[5:])
        return (v, v + 1, v) if v + 1 <= n else (v, v - 1, v)
    raise SchemaError(f"bad path {s!r}")


def dgcomplex_to_json(x: DgComplex) -> dict:
    return {
        "n": x.n,
        "generators": [
            {"vertex": g.vertex, "g": g.g, "h": g.h} for g in x.gens
        ],
        "differential": [
            {"row": r, "col": c, "path": path_str(p), "coeff": frac_str(v)}
            for r, c, e in x.diff
            for p, v in e
        ],
    }


def dgcomplex_from_json(d) -> DgComplex:
    try:
        n = int(d["n"])
        gens = [
            Generator(int(g["vertex"]), int(g["g"]), int(g["h"]))
            for g in d["generators"]
        ]
        diff: dict = {}
        for e in d.get("differential", []):
            key = (int(e["row"]), int(e["col"]))
            diff.setdefault(key, {})[parse_path(e["path"], n)] = parse_frac(e["coeff"])
        return make_complex(n, gens, diff)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad complex: {e}") from e


def hnlist_to_json(h) -> dict:
    groups = []
    for lift, entries in h.factors():
        groups.append(
            {
                "winding": lift.winding,
                "direction": [frac_str(lift.direction[0]), frac_str(lift.direction[1])],
                "pieces": [
                    {
                        "seg": segment_to_json(e.segment),
                        "multiplicity": e.multiplicity,
                    }
                    for e in entries
                ],
            }
        )
    return {"factors": groups}


def sspage_to_json(page) -> dict:
    return {
        "r": page.r,
        "cells": [
            {"p": p, "q": q, "dim": d} for (p, q), d in sorted(page.table.items())
        ],
        "d_ranks": [
            {"p": p, "q": q, "rank": r} for (p, q), r in sorted(page.d_ranks.items())
        ],
    }
