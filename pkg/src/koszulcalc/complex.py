"""The two-sided Koszul complex K(A) and the weightwise exactness check.

The weight-w slice of K(A)_p is spanned by triples  alpha (x) w (x) beta
with w in W_p and outer monomials alpha, beta whose weights add up to
w - p, subject to vertex matching on both sides.  The boundary absorbs
the first tensor factor of w into alpha and, with sign (-1)^p, the last
factor into beta; both moves run through the cached decompositions of
W_p into W_1 (x) W_{p-1} and W_{p-1} (x) W_1.

A is Koszul up to weight T exactly when the complex augmented by the
multiplication K(A)_0 -> A is exact in every weight slice w <= T.
"""

from __future__ import annotations

from .algebra import QuadraticAlgebra
from .linalg import Matrix, homology, vec_add_scaled
from .wspaces import WSpaces

__all__ = ["KoszulComplex", "KoszulnessReport", "check_koszulness"]


class KoszulComplex:
    """Weight-sliced realization of K(A) up to the truncation weight.

    Slice bases are labelled (r, ia, iw, ib): ia indexes A_r, iw indexes
    W_p, ib indexes A_{w-p-r}.
    """

    def __init__(self, algebra: QuadraticAlgebra, wspaces: WSpaces | None = None):
        self.algebra = algebra
        self.W = wspaces if wspaces is not None else WSpaces(algebra)
        self.T = algebra.T
        self.field = algebra.field
        self._bases: dict = {}
        self._index: dict = {}
        self._d_cache: dict = {}
        self._aug_cache: dict = {}

    def basis(self, p: int, w: int):
        key = (p, w)
        hit = self._bases.get(key)
        if hit is not None:
            return hit
        A = self.algebra
        out = []
        if 0 <= p <= self.W.pmax and p <= w <= self.T:
            wblocks = [self.W.block(p, k) for k in range(self.W.dim(p))]
            for r in range(w - p + 1):
                s = w - p - r
                ablocks = A.block_indices(r)
                bblocks = A.block_indices(s)
                for iw, (wt, ws) in enumerate(wblocks):
                    lefts = sorted(
                        ia for (t, sv), idxs in ablocks.items() if sv == wt
                        for ia in idxs)
                    rights = sorted(
                        ib for (t, sv), idxs in bblocks.items() if t == ws
                        for ib in idxs)
                    for ia in lefts:
                        for ib in rights:
                            out.append((r, ia, iw, ib))
        self._bases[key] = out
        self._index[key] = {lab: i for i, lab in enumerate(out)}
        return out

    def dim(self, p: int, w: int) -> int:
        return len(self.basis(p, w))

    def index(self, p: int, w: int):
        self.basis(p, w)
        return self._index[(p, w)]

    def pmax_slice(self, w: int) -> int:
        """Largest p with a nonzero weight-w slice."""
        top = 0
        for p in range(0, min(self.W.pmax, w) + 1):
            if self.dim(p, w):
                top = p
        return top

    # -- differential ---------------------------------------------------------

    def d_matrix(self, p: int, w: int) -> Matrix:
        """Matrix of d: K(A)_p -> K(A)_{p-1} on the weight-w slice."""
        key = (p, w)
        hit = self._d_cache.get(key)
        if hit is not None:
            return hit
        A = self.algebra
        field = self.field
        one = field.one
        src = self.basis(p, w)
        dst_index = self.index(p - 1, w) if p >= 1 else {}
        cols: list = [dict() for _ in src]
        if p >= 1 and src:
            sign = one if p % 2 == 0 else field.neg(one)
            pairs_l, rows_l = self.W.decompose(1, p - 1)
            pairs_r, rows_r = self.W.decompose(p - 1, 1)
            for col, (r, ia, iw, ib) in enumerate(src):
                s = w - p - r
                acc = cols[col]
                for j, cj in rows_l[iw].items():
                    m_arrow, iw2 = pairs_l[j]
                    prod = A.multiply(r, {ia: one}, 1, {m_arrow: one})
                    for ia2, ca in prod.items():
                        i = dst_index[(r + 1, ia2, iw2, ib)]
                        vec_add_scaled(field, acc, cj * ca, {i: one})
                for j, cj in rows_r[iw].items():
                    iw2, m_arrow = pairs_r[j]
                    prod = A.multiply(1, {m_arrow: one}, s, {ib: one})
                    for ib2, cb in prod.items():
                        i = dst_index[(r, ia, iw2, ib2)]
                        vec_add_scaled(field, acc, sign * cj * cb, {i: one})
        entries = {}
        for col, acc in enumerate(cols):
            for i, v in acc.items():
                entries[(i, col)] = v
        m = Matrix.from_entries(self.dim(p - 1, w) if p >= 1 else 0,
                                len(src), entries, field)
        self._d_cache[key] = m
        return m

    def apply_d(self, p: int, w: int, coords: dict) -> dict:
        return self.d_matrix(p, w).mul_vec(coords)

    # -- augmentation -----------------------------------------------------------

    def augmentation(self, w: int) -> Matrix:
        """Multiplication K(A)_0 -> A on the weight-w slice."""
        hit = self._aug_cache.get(w)
        if hit is not None:
            return hit
        A = self.algebra
        field = self.field
        src = self.basis(0, w)
        entries = {}
        for col, (r, ia, iw, ib) in enumerate(src):
            s = w - r
            prod = A.multiply(r, {ia: field.one}, s, {ib: field.one})
            for i, c in prod.items():
                entries[(i, col)] = c
        m = Matrix.from_entries(A.dim(w), len(src), entries, field)
        self._aug_cache[w] = m
        return m


class KoszulnessReport:
    """Per-weight homology dims of the augmented Koszul complex."""

    def __init__(self, T: int, tables):
        self.T = T
        self.tables = tables  # {w: [dim H_0, dim H_1, ...]}

    @property
    def is_koszul(self) -> bool:
        return all(all(d == 0 for d in dims) for dims in self.tables.values())

    def first_failure(self):
        for w in sorted(self.tables):
            for p, d in enumerate(self.tables[w]):
                if d:
                    return (w, p, d)
        return None

    def rows(self):
        return [
            {"weight": w, "p": p, "dim": d}
            for w in sorted(self.tables)
            for p, d in enumerate(self.tables[w])
        ]


def check_koszulness(algebra: QuadraticAlgebra, T: int | None = None,
                     wspaces: WSpaces | None = None) -> KoszulnessReport:
    """Homology of ... -> K(A)_1 -> K(A)_0 -> A -> 0 in every weight <= T."""
    K = KoszulComplex(algebra, wspaces)
    T = algebra.T if T is None else T
    if T > algebra.T:
        raise ValueError("cannot check beyond the algebra truncation")
    tables = {}
    for w in range(T + 1):
        dims = []
        for p in range(0, K.pmax_slice(w) + 1):
            d_out = K.d_matrix(p, w) if p > 0 else K.augmentation(w)
            d_in = K.d_matrix(p + 1, w)
            dim, _reps = homology(d_in, d_out)
            dims.append(dim)
        tables[w] = dims
    return KoszulnessReport(T, tables)
