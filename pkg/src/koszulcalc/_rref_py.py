"""Pure-Python row-reduction kernels.

These are the hot loops of the whole package: every subspace, kernel,
intersection and homology computation funnels into `rref_frac` (exact
rationals) or `rref_mod` (prime field).  A compiled twin lives in
``_rref_cy.pyx``; both expose the same two functions and must return
bit-identical results.

Representation during elimination:

* rational rows are scaled to primitive integer rows (content 1), so the
  inner loop is pure bigint arithmetic with one gcd pass per combined row
  instead of per-entry Fraction normalisation;
* prime-field rows hold ints in ``[1, p)`` with the pivot normalised to 1
  as soon as the row is selected.

Rows are kept sparse as ``{col: value}`` dicts bucketed by leading column;
below `DENSE_COLS` columns and above `DENSE_FILL` fill ratio a dense list
path is used instead.  Both paths implement the same deterministic pivot
rule (first available row, columns in increasing order), and the reduced
row echelon form is unique regardless.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

BACKEND = "python"

# Dense-path thresholds; identical results either way, only speed differs.
DENSE_COLS = 384
DENSE_FILL = 0.18


def _int_rows(rows):
    """Scale Fraction/int rows to primitive integer rows, dropping zeros."""
    out = []
    for row in rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                d = v.denominator
                den = den * d // gcd(den, d)
        ints = {}
        g = 0
        for c, v in row.items():
            if isinstance(v, Fraction):
                w = v.numerator * (den // v.denominator)
            else:
                w = v * den
            if w:
                ints[c] = w
                g = gcd(g, w)
        if not ints:
            continue
        if g > 1:
            for c in ints:
                ints[c] //= g
        out.append(ints)
    return out


def _normalize_int(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def _combine_int(row, rv, prow, pv):
    """row*pv - prow*rv, gcd-normalized; empty dict if zero."""
    out = {}
    for c, x in row.items():
        out[c] = x * pv
    for c, y in prow.items():
        z = out.get(c, 0) - y * rv
        if z:
            out[c] = z
        elif c in out:
            del out[c]
    if out:
        _normalize_int(out)
    return out


def _forward_int(work, ncols):
    """Sparse forward elimination over primitive integer rows."""
    buckets = {}
    for row in work:
        buckets.setdefault(min(row), []).append(row)
    pivots = []
    for col in range(ncols):
        rows_here = buckets.pop(col, None)
        if not rows_here:
            continue
        prow = rows_here[0]
        pv = prow[col]
        for row in rows_here[1:]:
            new = _combine_int(row, row[col], prow, pv)
            if new:
                buckets.setdefault(min(new), []).append(new)
        pivots.append((col, prow))
    return pivots


def _backsub_int(pivots):
    for i in range(len(pivots) - 1, 0, -1):
        ci, ri = pivots[i]
        pv = ri[ci]
        for j in range(i):
            cj, rj = pivots[j]
            v = rj.get(ci)
            if v:
                pivots[j] = (cj, _combine_int(rj, v, ri, pv))
    return pivots


def rref_frac(rows, ncols):
    """RREF over Q.

    rows: iterable of sparse {col: Fraction|int} dicts.
    Returns (rref_rows, pivot_cols): rows as {col: Fraction} with pivot
    entries 1, pivot columns strictly increasing, no zero rows.
    """
    work = _int_rows(rows)
    if not work:
        return [], []
    nnz = sum(len(r) for r in work)
    if ncols <= DENSE_COLS and nnz >= DENSE_FILL * len(work) * ncols:
        pivots = _rref_frac_dense(work, ncols)
    else:
        pivots = _backsub_int(_forward_int(work, ncols))
    out_rows = []
    out_cols = []
    for col, row in pivots:
        pv = row[col]
        out_rows.append({c: Fraction(v, pv) for c, v in sorted(row.items())})
        out_cols.append(col)
    return out_rows, out_cols


def _rref_frac_dense(work, ncols):
    dense = []
    for row in work:
        d = [0] * ncols
        for c, v in row.items():
            d[c] = v
        dense.append(d)
    nrows = len(dense)
    pivots = []
    r0 = 0
    for col in range(ncols):
        k = -1
        for i in range(r0, nrows):
            if dense[i][col]:
                k = i
                break
        if k < 0:
            continue
        dense[r0], dense[k] = dense[k], dense[r0]
        prow = dense[r0]
        pv = prow[col]
        # Rows below r0 have zeros left of col, so rescaling from col on is safe.
        for i in range(r0 + 1, nrows):
            v = dense[i][col]
            if v:
                ri = dense[i]
                g = 0
                for c in range(col, ncols):
                    z = ri[c] * pv - prow[c] * v
                    ri[c] = z
                    g = gcd(g, z)
                if g > 1:
                    for c in range(col, ncols):
                        ri[c] //= g
        pivots.append((col, prow))
        r0 += 1
        if r0 == nrows:
            break
    # Back phase: earlier rows carry their own pivot, so combine full rows.
    for i in range(len(pivots) - 1, 0, -1):
        ci, ri = pivots[i]
        pv = ri[ci]
        for j in range(i):
            rj = pivots[j][1]
            v = rj[ci]
            if v:
                g = 0
                for c in range(ncols):
                    z = rj[c] * pv - ri[c] * v
                    rj[c] = z
                    g = gcd(g, z)
                if g > 1:
                    for c in range(ncols):
                        rj[c] //= g
    out = []
    for col, prow in pivots:
        row = {c: v for c, v in enumerate(prow) if v}
        out.append((col, row))
    return out


def rref_mod(rows, ncols, p):
    """RREF over GF(p).

    rows: iterable of sparse {col: int} dicts (any representatives mod p).
    Returns (rref_rows, pivot_cols) with entries in [1, p), pivots 1.
    """
    work = []
    for row in rows:
        r = {}
        for c, v in row.items():
            v %= p
            if v:
                r[c] = v
        if r:
            work.append(r)
    if not work:
        return [], []
    nnz = sum(len(r) for r in work)
    if ncols <= DENSE_COLS and nnz >= DENSE_FILL * len(work) * ncols:
        return _rref_mod_dense(work, ncols, p)

    buckets = {}
    for row in work:
        buckets.setdefault(min(row), []).append(row)
    pivots = []
    for col in range(ncols):
        rows_here = buckets.pop(col, None)
        if not rows_here:
            continue
        prow = rows_here[0]
        inv = pow(prow[col], -1, p)
        if inv != 1:
            for c in prow:
                prow[c] = prow[c] * inv % p
        for row in rows_here[1:]:
            v = row[col]
            new = {}
            for c, x in row.items():
                new[c] = x
            for c, y in prow.items():
                z = (new.get(c, 0) - y * v) % p
                if z:
                    new[c] = z
                elif c in new:
                    del new[c]
            if new:
                buckets.setdefault(min(new), []).append(new)
        pivots.append((col, prow))
    for i in range(len(pivots) - 1, 0, -1):
        ci, ri = pivots[i]
        for j in range(i):
            cj, rj = pivots[j]
            v = rj.get(ci)
            if v:
                for c, y in ri.items():
                    z = (rj.get(c, 0) - y * v) % p
                    if z:
                        rj[c] = z
                    elif c in rj:
                        del rj[c]
    out_rows = []
    out_cols = []
    for col, row in pivots:
        out_rows.append(dict(sorted(row.items())))
        out_cols.append(col)
    return out_rows, out_cols


def _rref_mod_dense(work, ncols, p):
    dense = []
    for row in work:
        d = [0] * ncols
        for c, v in row.items():
            d[c] = v
        dense.append(d)
    nrows = len(dense)
    pivots = []
    r0 = 0
    for col in range(ncols):
        k = -1
        for i in range(r0, nrows):
            if dense[i][col]:
                k = i
                break
        if k < 0:
            continue
        dense[r0], dense[k] = dense[k], dense[r0]
        prow = dense[r0]
        inv = pow(prow[col], -1, p)
        if inv != 1:
            for c in range(col, ncols):
                if prow[c]:
                    prow[c] = prow[c] * inv % p
        for i in range(nrows):
            if i == r0:
                continue
            v = dense[i][col]
            if v:
                ri = dense[i]
                for c in range(col, ncols):
                    if prow[c]:
                        ri[c] = (ri[c] - prow[c] * v) % p
        pivots.append((col, r0))
        r0 += 1
        if r0 == nrows:
            break
    out_rows = []
    out_cols = []
    for col, i in pivots:
        out_rows.append({c: v for c, v in enumerate(dense[i]) if v})
        out_cols.append(col)
    return out_rows, out_cols
