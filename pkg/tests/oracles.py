"""Independent reference implementations used to cross-check results.

Deliberately naive: dense textbook Gaussian elimination over Fraction,
combinatorial monomial counters, and brute-force subspace constructions.
Nothing here shares code with the production kernels.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


def dense_rows(matrix):
    return [[matrix.entry(i, j) for j in range(matrix.ncols)]
            for i in range(matrix.nrows)]


def dense_rank(rows, field=None) -> int:
    """Row reduce a dense list-of-lists matrix; exact division."""
    if not rows or not rows[0]:
        return 0
    rows = [list(r) for r in rows]
    nr, nc = len(rows), len(rows[0])

    if field is None:
        div = lambda a, b: Fraction(a) / b
        sub = lambda a, b: a - b
        mul = lambda a, b: a * b
    else:
        div, sub, mul = field.div, field.sub, field.mul

    rank = 0
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        for i in range(nr):
            if i != rank and rows[i][col]:
                f = div(rows[i][col], pv)
                rows[i] = [sub(x, mul(f, y)) for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def homology_dim(d_in, d_out, field=None) -> int:
    """dim ker(d_out) - rank(d_in) by dense elimination."""
    r_out = dense_rank(dense_rows(d_out), field)
    r_in = dense_rank(dense_rows(d_in), field)
    return d_out.ncols - r_out - r_in


def polynomial_dim(n: int, m: int) -> int:
    """Monomials of degree m in n commuting variables."""
    return comb(n + m - 1, m) if m >= 0 else 0


def exterior_dim(n: int, m: int) -> int:
    return comb(n, m) if 0 <= m <= n else 0


def free_dim(n: int, m: int) -> int:
    return n ** m


def placement_spans(A, p):
    """All placements of the relation space in the length-p path space,
    each as a list of spanning vectors (for the brute intersection oracle)."""
    out = []
    paths_p = A.paths[p]
    paths2 = A.paths[2]
    for i in range(p - 1):
        j = p - 2 - i
        vecs = []
        for rv in A.relations.basis_vectors():
            terms = [(paths2.items[k][2], c) for k, c in rv.items()]
            first = next(iter(rv))
            bt, bs = paths2.block(first)
            for lt, ls, larr in A.paths[i].items:
                if ls != bt:
                    continue
                for rt, rs, rarr in A.paths[j].items:
                    if bs != rt:
                        continue
                    vecs.append({paths_p.index[larr + mid + rarr]: c
                                 for mid, c in terms})
        out.append(vecs)
    return out
