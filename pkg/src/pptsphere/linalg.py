"""Exact linear algebra over Q used throughout: ranks, kernels, solving.

Matrices are either lists of sparse rows (dict col -> Fraction) or dense
lists of Fraction lists.  Everything is small enough at desk scale that
plain Gaussian elimination with a sparsity-aware pivot choice suffices.
"""

from __future__ import annotations

from fractions import Fraction


def rank_sparse(rows: list[dict[int, Fraction]]) -> int:
    """Rank of a matrix given as sparse rows; destructive on a copy."""
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        # Prefer short rows and unit pivots to limit fill-in.
        best = min(range(len(rows)), key=lambda k: (len(rows[k]),))
        row = rows.pop(best)
        if not row:
            continue
        piv = min(row, key=lambda c: (abs(row[c]).numerator != 1 or abs(row[c]).denominator != 1, c))
        pv = row[piv]
        rank += 1
        new_rows = []
        for r in rows:
            if piv in r:
                f = r[piv] / pv
                out = dict(r)
                for c, v in row.items():
                    w = out.get(c, Fraction(0)) - f * v
                    if w:
                        out[c] = w
                    else:
                        out.pop(c, None)
                if out:
                    new_rows.append(out)
            else:
                new_rows.append(r)
        rows = new_rows
    return rank


def _to_dense(rows, ncols):
    dense = []
    for r in rows:
        if isinstance(r, dict):
            v = [Fraction(0)] * ncols
            for c, x in r.items():
                v[c] = Fraction(x)
            dense.append(v)
        else:
            dense.append([Fraction(x) for x in r])
    return dense


def rref(rows, ncols):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = _to_dense(rows, ncols)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_basis(rows, ncols) -> list[list[Fraction]]:
    """Basis of the right kernel of the matrix (rows act on column vectors)."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][free]
        basis.append(v)
    return basis


def span_dim(vectors, ncols) -> int:
    """Dimension of the span of the given vectors."""
    return len(rref(vectors, ncols)[0])


def solve(rows, ncols, b):
    """One solution x of A x = b, or None if inconsistent."""
    aug = []
    for r, bi in zip(_to_dense(rows, ncols), b):
        aug.append(r + [Fraction(bi)])
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x
