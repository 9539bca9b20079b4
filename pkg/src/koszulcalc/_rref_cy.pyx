# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction kernels: the drop-in twin of _rref_py.

Same two entry points, same deterministic pivot rule, bit-identical
results.  The prime-field dense path runs on typed int64 buffers (the
big win); the rational paths keep Python bigints for exactness but move
the loop machinery into compiled code.
"""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem
from libc.stdint cimport int64_t

from fractions import Fraction
from math import gcd

BACKEND = "cython"

DENSE_COLS = 384
DENSE_FILL = 0.18


# ---------------------------------------------------------------------------
# shared helpers (rational path)

cdef list _int_rows(rows):
    cdef dict ints
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
                ints[c] = ints[c] // g
        out.append(ints)
    return out


cdef dict _combine_int(dict row, rv, dict prow, pv):
    cdef dict out = {}
    for c, x in row.items():
        out[c] = x * pv
    for c, y in prow.items():
        z = out.get(c, 0) - y * rv
        if z:
            out[c] = z
        elif c in out:
            del out[c]
    if out:
        g = 0
        for v in out.values():
            g = gcd(g, v)
            if g == 1:
                return out
        if g > 1:
            for c in out:
                out[c] = out[c] // g
    return out


def rref_frac(rows, ncols):
    """RREF over Q; see the pure twin for the contract."""
    cdef list work = _int_rows(rows)
    cdef Py_ssize_t nnz, i, j
    if not work:
        return [], []
    nnz = 0
    for r in work:
        nnz += len(r)
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


cdef list _forward_int(list work, Py_ssize_t ncols):
    cdef dict buckets = {}
    cdef list pivots = []
    cdef dict prow, row, new
    cdef Py_ssize_t col
    for row in work:
        lead = min(row)
        if lead in buckets:
            (<list>buckets[lead]).append(row)
        else:
            buckets[lead] = [row]
    for col in range(ncols):
        rows_here = buckets.pop(col, None)
        if rows_here is None:
            continue
        prow = (<list>rows_here)[0]
        pv = prow[col]
        for row in (<list>rows_here)[1:]:
            new = _combine_int(row, row[col], prow, pv)
            if new:
                lead = min(new)
                if lead in buckets:
                    (<list>buckets[lead]).append(new)
                else:
                    buckets[lead] = [new]
        pivots.append((col, prow))
    return pivots


cdef list _backsub_int(list pivots):
    cdef Py_ssize_t i, j
    cdef dict ri, rj
    for i in range(len(pivots) - 1, 0, -1):
        ci, ri = pivots[i]
        pv = ri[ci]
        for j in range(i):
            cj, rj = pivots[j]
            v = rj.get(ci)
            if v:
                pivots[j] = (cj, _combine_int(rj, v, ri, pv))
    return pivots


cdef list _rref_frac_dense(list work, Py_ssize_t ncols):
    cdef list dense = []
    cdef list d, prow, ri, rj
    cdef Py_ssize_t nrows, r0, col, i, k, c
    for row in work:
        d = [0] * ncols
        for c, v in (<dict>row).items():
            d[c] = v
        dense.append(d)
    nrows = len(dense)
    pivots = []
    r0 = 0
    for col in range(ncols):
        k = -1
        for i in range(r0, nrows):
            if (<list>dense[i])[col]:
                k = i
                break
        if k < 0:
            continue
        dense[r0], dense[k] = dense[k], dense[r0]
        prow = dense[r0]
        pv = prow[col]
        for i in range(r0 + 1, nrows):
            ri = dense[i]
            v = ri[col]
            if v:
                g = 0
                for c in range(col, ncols):
                    z = ri[c] * pv - prow[c] * v
                    ri[c] = z
                    g = gcd(g, z)
                if g > 1:
                    for c in range(col, ncols):
                        ri[c] = ri[c] // g
        pivots.append((col, prow))
        r0 += 1
        if r0 == nrows:
            break
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
                        rj[c] = rj[c] // g
    out = []
    for col, prow in pivots:
        row = {}
        for c in range(ncols):
            if (<list>prow)[c]:
                row[c] = (<list>prow)[c]
        out.append((col, row))
    return out


# ---------------------------------------------------------------------------
# prime field

def rref_mod(rows, ncols, p):
    """RREF over GF(p); see the pure twin for the contract."""
    cdef list work = []
    cdef dict r
    for row in rows:
        r = {}
        for c, v in row.items():
            vv = v % p
            if vv:
                r[c] = vv
        if r:
            work.append(r)
    if not work:
        return [], []
    cdef Py_ssize_t nnz = 0
    for rr in work:
        nnz += len(rr)
    if ncols <= DENSE_COLS and nnz >= DENSE_FILL * len(work) * ncols \
            and p < (<int64_t>1 << 31):
        return _rref_mod_dense(work, ncols, p)
    return _rref_mod_sparse(work, ncols, p)


cdef _rref_mod_sparse(list work, Py_ssize_t ncols, p):
    cdef dict buckets = {}
    cdef list pivots = []
    cdef dict prow, row, new
    cdef Py_ssize_t col
    for row in work:
        lead = min(row)
        if lead in buckets:
            (<list>buckets[lead]).append(row)
        else:
            buckets[lead] = [row]
    for col in range(ncols):
        rows_here = buckets.pop(col, None)
        if rows_here is None:
            continue
        prow = (<list>rows_here)[0]
        inv = pow(prow[col], -1, p)
        if inv != 1:
            for c in prow:
                prow[c] = prow[c] * inv % p
        for row in (<list>rows_here)[1:]:
            v = row[col]
            new = dict(row)
            for c, y in prow.items():
                z = (new.get(c, 0) - y * v) % p
                if z:
                    new[c] = z
                elif c in new:
                    del new[c]
            if new:
                lead = min(new)
                if lead in buckets:
                    (<list>buckets[lead]).append(new)
                else:
                    buckets[lead] = [new]
        pivots.append((col, prow))
    cdef Py_ssize_t i, j
    cdef dict ri, rj
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


cdef _rref_mod_dense(list work, Py_ssize_t ncols, pobj):
    cdef int64_t p = pobj
    cdef Py_ssize_t nrows = len(work)
    cdef Py_ssize_t i, k, c, r0, col
    cdef int64_t pv, v, inv
    buf = bytearray(nrows * ncols * sizeof(int64_t))
    cdef int64_t[::1] flat = memoryview(buf).cast("q")
    for i in range(nrows):
        for c, val in (<dict>work[i]).items():
            flat[i * ncols + <Py_ssize_t>c] = val
    pivots = []
    r0 = 0
    for col in range(ncols):
        k = -1
        for i in range(r0, nrows):
            if flat[i * ncols + col]:
                k = i
                break
        if k < 0:
            continue
        if k != r0:
            for c in range(ncols):
                flat[r0 * ncols + c], flat[k * ncols + c] = \
                    flat[k * ncols + c], flat[r0 * ncols + c]
        pv = flat[r0 * ncols + col]
        inv = <int64_t>pow(pv, -1, pobj)
        if inv != 1:
            for c in range(col, ncols):
                if flat[r0 * ncols + c]:
                    flat[r0 * ncols + c] = flat[r0 * ncols + c] * inv % p
        for i in range(nrows):
            if i == r0:
                continue
            v = flat[i * ncols + col]
            if v:
                for c in range(col, ncols):
                    if flat[r0 * ncols + c]:
                        flat[i * ncols + c] = (
                            flat[i * ncols + c] - flat[r0 * ncols + c] * v) % p
                        if flat[i * ncols + c] < 0:
                            flat[i * ncols + c] += p
        pivots.append((col, r0))
        r0 += 1
        if r0 == nrows:
            break
    out_rows = []
    out_cols = []
    for col, i in pivots:
        row = {}
        for c in range(ncols):
            if flat[i * ncols + c]:
                row[c] = int(flat[i * ncols + c])
        out_rows.append(row)
        out_cols.append(col)
    return out_rows, out_cols
