"""The spectral sequence of a filtered Hom complex, and the Mukai check.

A filtered object is an iterated cone presented by its factors plus the
lower-triangular glue; the total complex keeps each factor's generators as a
graded-vector-space summand.  Pages are computed by the standard Z_r/B_r
subquotient formulas with exact ranks over Q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import NotACocycle
from .kscat import (
    DgComplex,
    Element,
    Generator,
    elem_mul,
    hom_dims,
    make_complex,
    zigzag_hom_basis,
    path_deg,
)


@dataclass(frozen=True)
class FilteredObject:
    """Factors A_1..A_s with glue components mapping later factors into
    earlier ones (the differential of an iterated cone is lower triangular).

    glue[(i, j)][(r, c)] is an element mapping generator c of factor j to
    generator r of factor i, for i < j.
    """

    n: int
    factors: tuple[DgComplex, ...]
    glue: tuple[tuple[tuple[int, int], tuple[tuple[tuple[int, int], tuple], ...]], ...]

    def glue_map(self):
        out = {}
        for (i, j), entries in self.glue:
            out[(i, j)] = {rc: dict(e) for rc, e in entries}
        return out


def make_filtered(n: int, factors, glue) -> FilteredObject:
    packed = []
    for (i, j), comp in sorted(glue.items()):
        if not (0 <= i < j < len(factors)):
            raise ValueError("glue must map later factors into earlier ones")
        entries = tuple(
            (rc, tuple(sorted(e.items()))) for rc, e in sorted(comp.items()) if e
        )
        if entries:
            packed.append(((i, j), entries))
    f = FilteredObject(n, tuple(factors), tuple(packed))
    assemble(f)  # validates d^2 = 0
    return f


def assemble(f: FilteredObject) -> DgComplex:
    """The total complex; raises NotACocycle if the glue is inconsistent."""
    gens = []
    offsets = []
    for x in f.factors:
        offsets.append(len(gens))
        gens.extend(x.gens)
    diff = {}
    for k, x in enumerate(f.factors):
        off = offsets[k]
        for r, c, e in x.diff:
            diff[(r + off, c + off)] = dict(e)
    for (i, j), comp in f.glue_map().items():
        for (r, c), e in comp.items():
            diff[(r + offsets[i], c + offsets[j])] = dict(e)
    try:
        return make_complex(f.n, gens, diff)
    except ValueError as exc:
        raise NotACocycle(str(exc)) from exc


def factor_index_of_gens(f: FilteredObject) -> list[int]:
    out = []
    for k, x in enumerate(f.factors):
        out.extend([k] * len(x.gens))
    return out


def single_factor(x: DgComplex) -> FilteredObject:
    return make_filtered(x.n, [x], {})


def two_step(a1: DgComplex, a2: DgComplex, glue) -> FilteredObject:
    """Triangle A_1 -> X -> A_2 presented as a filtered object."""
    return make_filtered(a1.n, [a1, a2], {(0, 1): glue})


@dataclass(frozen=True)
class SSPage:
    r: int
    table: dict
    d_ranks: dict


def _hom_basis_with_weights(xf: FilteredObject, yf: FilteredObject):
    x = assemble(xf)
    y = assemble(yf)
    fx = factor_index_of_gens(xf)
    fy = factor_index_of_gens(yf)
    comps = []
    for xi, gx in enumerate(x.gens):
        for yi, gy in enumerate(y.gens):
            for p, d in zigzag_hom_basis(x.n, gx.vertex, gy.vertex):
                t = (gy.h - gx.h) + d - gx.g + gy.g
                w = fx[xi] - fy[yi]
                comps.append((xi, yi, p, t, w))
    return x, y, comps


def _hom_differential(x, y, comps):
    """Sparse columns of the Hom-complex differential, per total degree."""
    n = x.n
    index: dict[tuple, int] = {}
    by_deg: dict[int, list[int]] = {}
    for k, (xi, yi, p, t, w) in enumerate(comps):
        index[(xi, yi, p)] = k
        by_deg.setdefault(t, []).append(k)
    dx, dy = x.diff_map(), y.diff_map()
    cols: dict[int, dict[int, Fraction]] = {}
    for k, (xi, yi, p, t, w) in enumerate(comps):
        col: dict[int, Fraction] = {}
        for (r, c), e in dy.items():
            if c != yi:
                continue
            for q, v in elem_mul(e, {p: Fraction(1)}, n).items():
                kk = index.get((xi, r, q))
                if kk is not None:
                    col[kk] = col.get(kk, Fraction(0)) + v
        sgn = Fraction(-((-1) ** t))
        for (r, c), e in dx.items():
            if r != xi:
                continue
            for q, v in elem_mul({p: Fraction(1)}, e, n).items():
                kk = index.get((c, yi, q))
                if kk is not None:
                    col[kk] = col.get(kk, Fraction(0)) + sgn * v
        if col:
            cols[k] = col
    return cols


def spectral_pages(xf: FilteredObject, yf: FilteredObject, r_max: int | None = None):
    """Pages E_1, E_2, ... with differential ranks, plus the stable limit.

    Also verifies convergence: the E_infinity column sums must equal the
    graded dimensions of Hom(assemble(X), assemble(Y)).
    """
    x, y, comps = _hom_basis_with_weights(xf, yf)
    cols = _hom_differential(x, y, comps)
    nfac, mfac = len(xf.factors), len(yf.factors)
    if r_max is None:
        r_max = nfac + mfac + 1
    degs = sorted({t for (_, _, _, t, _) in comps})
    weights = [w for (_, _, _, _, w) in comps]
    tdeg = [t for (_, _, _, t, _) in comps]
    dim = len(comps)

    def z_basis(p, k, r):
        """Basis of Z_r = {v in F_p C^k : dv in F_{p+r} C^{k+1}}."""
        src = [i for i in range(dim) if tdeg[i] == k and weights[i] >= p]
        if not src:
            return []
        rows = []
        for i in src:
            col = cols.get(i, {})
            row = {
                j: v
                for j, v in col.items()
                if tdeg[j] == k + 1 and weights[j] < p + r
            }
            rows.append(row)
        # kernel of the map, with matrix rows indexed by the targets
        targets = sorted({j for row in rows for j in row})
        tix = {j: a for a, j in enumerate(targets)}
        mat = [dict() for _ in targets]
        for ci, row in enumerate(rows):
            for j, v in row.items():
                mat[tix[j]][ci] = v
        ker = linalg.kernel_basis(mat, len(src))
        out = []
        for kv in ker:
            vec = {}
            for ci, val in enumerate(kv):
                if val:
                    vec[src[ci]] = val
            out.append(vec)
        return out

    def apply_d(vec):
        out: dict[int, Fraction] = {}
        for i, v in vec.items():
            for j, w in cols.get(i, {}).items():
                out[j] = out.get(j, Fraction(0)) + v * w
        return {j: v for j, v in out.items() if v}

    def span_of(vecs, coords):
        cix = {c: a for a, c in enumerate(coords)}
        rows = []
        for vec in vecs:
            rows.append({cix[c]: v for c, v in vec.items()})
        return linalg.span_dim(rows, len(coords))

    p_range = range(-mfac, nfac + 1)
    pages = []
    prev_table = None
    for r in range(1, r_max + 1):
        table = {}
        d_ranks = {}
        for k in degs:
            for p in p_range:
                coords = [i for i in range(dim) if tdeg[i] == k and weights[i] >= p]
                if not coords:
                    continue
                zr = z_basis(p, k, r)
                sub1 = z_basis(p + 1, k, r - 1)
                sub2 = [v for v in (apply_d(u) for u in z_basis(p - r + 1, k - 1, r - 1)) if v]
                val = span_of(zr, coords) - span_of(sub1 + sub2, coords)
                if val:
                    table[(p, k - p)] = val
        # rank of d_r out of each cell, as the induced map on subquotients
        for (p, q) in sorted(table):
            k = p + q
            imgs = [v for v in (apply_d(u) for u in z_basis(p, k, r)) if v]
            if not imgs:
                continue
            tp = p + r
            coords = [i for i in range(dim) if tdeg[i] == k + 1 and weights[i] >= tp]
            if not coords:
                continue
            denom = z_basis(tp + 1, k + 1, r - 1) + [
                w for w in (apply_d(v) for v in z_basis(tp - r + 1, k, r - 1)) if w
            ]
            rk = span_of(denom + imgs, coords) - span_of(denom, coords)
            if rk:
                d_ranks[(p, q)] = rk
        pages.append(SSPage(r, table, d_ranks))
        if prev_table == table and not d_ranks and r > max(nfac, mfac):
            break
        prev_table = table
    limit = pages[-1].table
    # convergence identity
    total_hom = hom_dims(x, y)
    col_sums: dict[int, int] = {}
    for (p, q), d0 in limit.items():
        col_sums[p + q] = col_sums.get(p + q, 0) + d0
    if col_sums != {k: v for k, v in total_hom.items() if v}:
        raise NotACocycle(
            f"spectral sequence does not converge to Hom: {col_sums} vs {total_hom}"
        )
    return pages, limit


def e1_formula(xf: FilteredObject, yf: FilteredObject):
    """The direct-sum formula for E_1: Hom^{p+q}(A_{k+p}, B_k)."""
    out: dict = {}
    for j, b in enumerate(yf.factors):
        for i, a in enumerate(xf.factors):
            p = i - j
            for t, d0 in hom_dims(a, b).items():
                key = (p, t - p)
                out[key] = out.get(key, 0) + d0
    return {k: v for k, v in out.items() if v}


def filtered_from_reference_arc(n: int, arc) -> FilteredObject:
    """The HN filtration of an arc's complex at a reference-like stability
    condition, read off the block-triangular structure along the spine.

    Factors are grouped by equal phase and ordered by decreasing phase, so
    the total differential is lower triangular.
    """
    from .stability import reference_hn_blocks

    x, blocks = reference_hn_blocks(n, arc)
    byphase: dict[int, list[int]] = {}
    for w, idxs in blocks:
        byphase.setdefault(w, []).extend(idxs)
    order = sorted(byphase, reverse=True)
    fac_idx = {}
    gens_per = []
    for fi, w in enumerate(order):
        idxs = sorted(byphase[w])
        for t, g in enumerate(idxs):
            fac_idx[g] = (fi, t)
        gens_per.append(idxs)
    dmap = x.diff_map()
    factors = []
    for idxs in gens_per:
        renum = {g: t for t, g in enumerate(idxs)}
        gens = [x.gens[g] for g in idxs]
        diff = {
            (renum[r], renum[c]): dict(e)
            for (r, c), e in dmap.items()
            if r in renum and c in renum
        }
        factors.append(make_complex(x.n, gens, diff))
    glue: dict = {}
    for (r, c), e in dmap.items():
        fr, lr = fac_idx[r]
        fc, lc = fac_idx[c]
        if fr == fc:
            continue
        if fr > fc:
            raise NotACocycle("differential maps an earlier factor into a later one")
        glue.setdefault((fr, fc), {})[(lr, lc)] = dict(e)
    return make_filtered(x.n, factors, glue)


def mukai_check(a1: DgComplex, a2: DgComplex, glue) -> dict:
    """Verify the hypotheses and the defect inequality for a two-step cone.

    Hypotheses: Hom^0(A_1, A_2) = 0 and Hom^2(A_2, A_1) = 0; then
    dim Hom^1(A_1,A_1) + dim Hom^1(A_2,A_2) <= dim Hom^1(X,X).
    """
    f = two_step(a1, a2, glue)
    x = assemble(f)
    h12 = hom_dims(a1, a2).get(0, 0)
    h21 = hom_dims(a2, a1).get(2, 0)
    d1 = hom_dims(a1, a1).get(1, 0)
    d2 = hom_dims(a2, a2).get(1, 0)
    dx = hom_dims(x, x).get(1, 0)
    report = {
        "hom0_a1_a2": h12,
        "hom2_a2_a1": h21,
        "hom1_a1": d1,
        "hom1_a2": d2,
        "hom1_x": dx,
        "hypotheses_met": h12 == 0 and h21 == 0,
        "inequality": d1 + d2 <= dx,
    }
    return report
