"""Exact linear algebra used across the kernel.

Two families live here: fraction-free (Bareiss-style) routines over
Z[q,q^-1] or GF(p)[t], where entries support exact_div, and plain Gaussian
elimination over a field (Fraction or RatQ), where entries support /.
Everything is deterministic; pivot choices use fixed tie-breaking so repeated
runs produce identical output.
"""

from __future__ import annotations

import math

from .qarith import LaurentInt, RatQ


# ---------------------------------------------------------------------------
# fraction-free routines (entries with exact_div)
# ---------------------------------------------------------------------------

def bareiss_det(matrix, one):
    """Determinant of a square matrix by Bareiss one-step elimination.

    Entries must support +, -, *, bool and exact_div; every division in the
    algorithm is exact by the Sylvester identity.
    """
    n = len(matrix)
    if n == 0:
        return one
    m = [list(r) for r in matrix]
    assert all(len(r) == n for r in m), "determinant of a non-square matrix"
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return one - one  # singular: a zero column below the diagonal
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pk * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = pk - pk  # zero of the right type
        prev = pk
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def bareiss_rank(matrix, one):
    """Rank via Bareiss elimination with full column pivoting."""
    if not matrix:
        return 0
    m = [list(r) for r in matrix]
    rows, cols = len(m), len(m[0])
    prev = one
    rank = 0
    for col in range(cols):
        piv = None
        for i in range(rank, rows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pk = m[rank][col]
        for i in range(rank + 1, rows):
            for j in range(col + 1, cols):
                m[i][j] = (pk * m[i][j] - m[i][col] * m[rank][j]).exact_div(prev)
            m[i][col] = pk - pk
        prev = pk
        rank += 1
        if rank == rows:
            break
    return rank


# ---------------------------------------------------------------------------
# sparse fraction-free echelon over Z[q,q^-1] (dict rows)
# ---------------------------------------------------------------------------

def _strip_laurent_row(row: dict) -> dict:
    """Divide a row by its integer content and common q-power in place."""
    if not row:
        return row
    g = 0
    shift = None
    for v in row.values():
        for e, a in v.c.items():
            g = math.gcd(g, a)
            shift = e if shift is None else min(shift, e)
    if g == 1 and shift == 0:
        return row
    return {c: LaurentInt({e - shift: a // g for e, a in v.c.items()})
            for c, v in row.items()}


def _row_weight(row: dict) -> int:
    return sum(len(v.c) for v in row.values())


def laurent_echelon(rows, ncols, descending=True):
    """Fraction-free row echelon of sparse Laurent rows.

    ``rows`` is a list of {col: LaurentInt}.  Columns are scanned in
    descending order by default, so the *non*-pivot columns are the greedy
    lexicographically-smallest independent set of the quotient — the property
    the word-basis selection relies on.  Within a column the pivot row is the
    sparsest (Markowitz-style), with deterministic tie-breaking.

    Returns {pivot_col: pivot_row_dict}; the input rows are consumed.
    """
    live = []
    for r in rows:
        r = {c: v for c, v in r.items() if v}
        if r:
            live.append(_strip_laurent_row(r))
    pivots = {}
    order = range(ncols - 1, -1, -1) if descending else range(ncols)
    for col in order:
        best = None
        for idx, r in enumerate(live):
            if col in r:
                key = (len(r), _row_weight(r), idx)
                if best is None or key < best[0]:
                    best = (key, idx)
        if best is None:
            continue
        piv = live.pop(best[1])
        pv = piv[col]
        nxt = []
        for r in live:
            rv = r.pop(col, None)
            if rv is None:
                nxt.append(r)
                continue
            out = {}
            for c, v in r.items():
                out[c] = pv * v
            for c, v in piv.items():
                if c == col:
                    continue
                t = out.get(c, _L0) - rv * v
                if t:
                    out[c] = t
                elif c in out:
                    del out[c]
            if out:
                nxt.append(_strip_laurent_row(out))
        live = nxt
        pivots[col] = piv
    assert not live, "nonzero rows left after scanning every column"
    return pivots


_L0 = LaurentInt.zero()


# ---------------------------------------------------------------------------
# field Gaussian elimination (entries with /): Fraction, RatQ, ...
# ---------------------------------------------------------------------------

def field_rref(matrix, zero, one):
    """Reduced row echelon form over a field.

    Returns (rref_rows, pivot_cols).  Entries need +, -, *, /, bool.
    """
    m = [list(r) for r in matrix]
    if not m:
        return [], []
    cols = len(m[0])
    pivot_cols = []
    r = 0
    for col in range(cols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][col]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivot_cols


def field_rank(matrix, zero, one):
    return len(field_rref(matrix, zero, one)[1])


def field_kernel(matrix, zero, one):
    """Right kernel basis of a matrix over a field.

    Returns a list of coordinate vectors v with matrix @ v == 0, one per
    free column, each normalized with a 1 in its free position.
    """
    if not matrix:
        return []
    cols = len(matrix[0])
    rref, piv = field_rref(matrix, zero, one)
    piv_set = set(piv)
    basis = []
    for free in range(cols):
        if free in piv_set:
            continue
        v = [zero] * cols
        v[free] = one
        for r, p in zip(rref, piv):
            v[p] = zero - r[free]
        basis.append(v)
    return basis


def field_inverse(matrix, zero, one):
    """Inverse of a square matrix over a field; raises on singular input."""
    n = len(matrix)
    aug = [list(row) + [one if i == j else zero for j in range(n)]
           for i, row in enumerate(matrix)]
    rref, piv = field_rref(aug, zero, one)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in rref]


def ratq_matrix_rank(matrix) -> int:
    """Generic rank over Q(q); rows are cleared to Laurent form first so the
    heavy lifting is fraction-free."""
    cleared = []
    for row in matrix:
        den = LaurentInt.one()
        for x in row:
            den = den * x.den
        cleared.append([(x * RatQ(den)).as_laurent() for x in row])
    return bareiss_rank(cleared, LaurentInt.one())
