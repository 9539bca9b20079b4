"""The weight-p relation intersection spaces W_p and their decompositions.

W_0 is the vertex span, W_1 the arrow span, W_2 the relation space, and
for p >= 3 W_p is the intersection of all placements of the relation
space inside the length-p path space.  The intersection is folded left to
right; since the first q placements only constrain the first q+2 tensor
factors, the fold is realised incrementally as

    W_p  =  (W_{p-1} (x) V)  intersect  (V^{p-2} (x) R),

which touches only small coordinate systems.  Every W_{p+q} embeds into
W_p (x) W_q; the decomposition matrices are solved once per (p, q) and
cached, because all differentials and products evaluate through them.
"""

from __future__ import annotations

from .algebra import QuadraticAlgebra
from .linalg import Matrix, Subspace, kernel_basis, solve_many, vec_add_scaled

__all__ = ["DecompositionError", "WSpaces", "antisymmetrize"]


class DecompositionError(Exception):
    """A W-space vector failed to decompose; signals an upstream bug."""


class WSpaces:
    """All W_p of an algebra for p up to the truncation weight."""

    def __init__(self, algebra: QuadraticAlgebra, pmax: int | None = None):
        self.algebra = algebra
        self.field = algebra.field
        self.pmax = algebra.T if pmax is None else pmax
        if self.pmax > algebra.T:
            raise ValueError("W spaces requested beyond algebra truncation")
        self._spaces = self._compute_all()
        self._dec_cache: dict = {}

    # -- construction -------------------------------------------------------

    def _compute_all(self):
        A = self.algebra
        field = self.field
        spaces = []
        k_basis = [{k: field.one} for k in range(A.quiver.n_vertices)]
        spaces.append(Subspace.from_vectors(k_basis, A.quiver.n_vertices, field))
        if self.pmax == 0:
            return spaces
        v_basis = [{a: field.one} for a in range(A.quiver.n_arrows)]
        spaces.append(Subspace.from_vectors(v_basis, A.quiver.n_arrows, field))
        if self.pmax == 1:
            return spaces
        spaces.append(A.relations.space)
        for p in range(3, self.pmax + 1):
            prev = spaces[p - 1]
            if prev.dim == 0:
                spaces.append(Subspace.zero(len(A.paths[p]), field))
                continue
            spaces.append(self._extend(p, prev))
        return spaces

    def _extend(self, p: int, prev: Subspace) -> Subspace:
        """W_p from W_{p-1}: candidates w (x) arrow, constrained so the
        last two tensor factors reduce to zero modulo the relations."""
        A = self.algebra
        field = self.field
        quiver = A.quiver
        paths_prev = A.paths[p - 1]
        paths_p = A.paths[p]
        rel_proj = A._components[2].proj  # length-2 path -> A_2 coordinates
        candidates = []  # vectors over paths_p
        columns = []  # images under (id (x) reduction mod R)
        for wvec in prev.basis.rows:
            # block of the W_{p-1} vector: single (t, s) pair
            src = paths_prev.block(min(wvec))[1]
            for a in range(quiver.n_arrows):
                if quiver.target[a] != src:
                    continue
                cand = {}
                image: dict = {}
                for k, c in wvec.items():
                    arrows = paths_prev.items[k][2]
                    cand[paths_p.index[arrows + (a,)]] = c
                    head, tail = arrows[:-1], arrows[-1]
                    red = rel_proj[A.paths[2].index[(tail, a)]]
                    for q2, c2 in red.items():
                        vec_add_scaled(field, image, c, {(head, q2): c2})
                candidates.append(cand)
                columns.append(image)
        if not candidates:
            return Subspace.zero(len(paths_p), field)
        row_ids = {}
        entries = {}
        for j, image in enumerate(columns):
            for key, c in image.items():
                i = row_ids.setdefault(key, len(row_ids))
                entries[(i, j)] = c
        constraint = Matrix.from_entries(len(row_ids), len(candidates), entries, field)
        ker = kernel_basis(constraint)
        vectors = []
        for cv in ker.basis.rows:
            vec: dict = {}
            for j, c in cv.items():
                vec_add_scaled(field, vec, c, candidates[j])
            vectors.append(vec)
        return Subspace.from_vectors(vectors, len(paths_p), field)

    # -- queries -------------------------------------------------------------

    def space(self, p: int) -> Subspace:
        if p > self.pmax:
            raise ValueError(f"W_{p} not computed (pmax={self.pmax})")
        return self._spaces[p]

    def dim(self, p: int) -> int:
        if p > self.pmax:
            raise ValueError(f"W_{p} not computed (pmax={self.pmax})")
        return self._spaces[p].dim

    def top_nonzero(self) -> int:
        """Largest p <= pmax with W_p != 0."""
        top = 0
        for p in range(self.pmax + 1):
            if self.dim(p):
                top = p
        return top

    def block(self, p: int, k: int):
        """(target, source) block of the k-th basis vector of W_p."""
        if p == 0:
            return (k, k)
        vec = self._spaces[p].basis.rows[k]
        return self.algebra.paths[p].block(min(vec))

    def block_indices(self, p: int):
        out = {}
        for k in range(self.dim(p)):
            out.setdefault(self.block(p, k), []).append(k)
        return out

    def basis_vector(self, p: int, k: int) -> dict:
        return self._spaces[p].basis.rows[k]

    # -- decompositions ------------------------------------------------------

    def pair_basis(self, p: int, q: int):
        """Composable basis pairs (a, b) of W_p (x) W_q, in order."""
        pairs = []
        for a in range(self.dim(p)):
            sa = self.block(p, a)[1]
            for b in range(self.dim(q)):
                if self.block(q, b)[0] == sa:
                    pairs.append((a, b))
        return pairs

    def embed_pair(self, p: int, q: int, a: int, b: int) -> dict:
        """w_a (x) w_b as a vector over length-(p+q) paths.

        A degree-0 factor is a vertex idempotent: tensoring with it is the
        identity on composable partners.
        """
        if p == 0:
            return dict(self.basis_vector(q, b))
        if q == 0:
            return dict(self.basis_vector(p, a))
        paths = self.algebra.paths
        target = paths[p + q]
        va = self.basis_vector(p, a)
        vb = self.basis_vector(q, b)
        out = {}
        for ka, ca in va.items():
            arr_a = paths[p].items[ka][2]
            for kb, cb in vb.items():
                arr_b = paths[q].items[kb][2]
                out[target.index[arr_a + arr_b]] = ca * cb
        if self.field.char:
            out = {k: v % self.field.char for k, v in out.items() if v % self.field.char}
        return out

    def decompose(self, p: int, q: int):
        """Coordinates of every W_{p+q} basis vector inside W_p (x) W_q.

        Returns (pairs, rows): rows[k] maps pair positions to coefficients
        with  w_k = sum  c * (w_a (x) w_b).  Cached per (p, q); the
        existence of the decomposition is what certifies the inclusion
        W_{p+q} <= W_p (x) W_q, so failure raises DecompositionError.
        """
        key = (p, q)
        hit = self._dec_cache.get(key)
        if hit is not None:
            return hit
        n = p + q
        pairs = self.pair_basis(p, q)
        targets = [self.basis_vector(n, k) for k in range(self.dim(n))]
        if not targets:
            result = (pairs, [])
            self._dec_cache[key] = result
            return result
        ambient = len(self.algebra.paths[n])
        rows = [{} for _ in range(ambient)]
        for j, (a, b) in enumerate(pairs):
            for i, c in self.embed_pair(p, q, a, b).items():
                rows[i][j] = c
        emb = Matrix(ambient, len(pairs), rows, self.field)
        try:
            sols = solve_many(emb, targets)
        except ValueError as exc:
            raise DecompositionError(
                f"W_{n} does not embed into W_{p} (x) W_{q}: {exc}"
            ) from exc
        result = (pairs, [{j: c for j, c in sol.items()} for sol in sols])
        self._dec_cache[key] = result
        return result


def antisymmetrize(algebra: QuadraticAlgebra, vectors) -> dict:
    """Signed sum over all permutations of a tensor word of arrow vectors.

    Input: a list of p vectors over the arrow basis (single-vertex quiver
    only).  Output lives in the length-p path space; for a symmetric
    algebra it lands in W_p.
    """
    if algebra.quiver.n_vertices != 1:
        raise ValueError("antisymmetrizer requires a single-vertex quiver")
    from itertools import permutations

    field = algebra.field
    p = len(vectors)
    paths = algebra.paths[p]
    out: dict = {}
    for perm in permutations(range(p)):
        sign = _perm_sign(perm)
        coeff_sign = field.one if sign > 0 else field.neg(field.one)
        # term: v_{perm^{-1}(1)} (x) ... (x) v_{perm^{-1}(p)}
        inv = [0] * p
        for i, s in enumerate(perm):
            inv[s] = i
        terms = [((), field.one)]
        for pos in range(p):
            vec = vectors[inv[pos]]
            terms = [
                (word + (a,), c * ca)
                for word, c in terms
                for a, ca in vec.items()
            ]
        for word, c in terms:
            vec_add_scaled(field, out, coeff_sign * c, {paths.index[word]: field.one})
    return out


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
