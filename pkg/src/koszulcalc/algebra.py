"""Quadratic quiver algebras, weight-truncated, with graded bimodules.

The algebra A = (path algebra)/(quadratic relations) is materialised
degree by degree up to a hard truncation weight T: each component A_m
gets a normal-form monomial basis (the non-pivot paths of the reduced
relation span) and a projection matrix from the full path space.
Multiplication is tensor-then-project and fails loudly beyond T.
"""

from __future__ import annotations

from .fields import Field
from .linalg import Matrix, Subspace, vec_add_scaled
from .quiver import PathBasis, Quiver

__all__ = [
    "BlockMismatch",
    "TruncationExceeded",
    "RelationSpace",
    "QuadraticAlgebra",
    "build_algebra",
    "symmetric_preset",
    "exterior_preset",
    "preprojective_preset",
    "GradedBimodule",
    "AlgebraBimodule",
    "EnvelopingBimodule",
    "ShiftedBimodule",
]


class BlockMismatch(Exception):
    """A relation vector mixes distinct (target, source) vertex blocks."""


class TruncationExceeded(Exception):
    """An operation needs a weight component beyond the truncation."""


class RelationSpace:
    """The quadratic relation space: a subspace of the length-2 path space
    whose basis vectors each live in a single vertex block."""

    def __init__(self, quiver: Quiver, vectors, field: Field):
        self.quiver = quiver
        self.field = field
        self.paths2 = PathBasis(quiver, 2)
        vecs = []
        for v in vectors:
            v = {k: field.coerce(c) for k, c in v.items() if c}
            if not v:
                continue
            blocks = {self.paths2.block(k) for k in v}
            if len(blocks) > 1:
                raise BlockMismatch(
                    f"relation mixes vertex blocks {sorted(blocks)}"
                )
            vecs.append(v)
        self.space = Subspace.from_vectors(vecs, len(self.paths2), field)

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis_vectors(self):
        return self.space.vectors()


class _Component:
    """One weight component of the algebra: normal-form basis + projection."""

    __slots__ = ("basis", "index", "proj")

    def __init__(self, basis, index, proj):
        self.basis = basis  # list of path labels (t, s, arrows)
        self.index = index  # arrows tuple -> basis position
        self.proj = proj  # path index -> sparse vec over basis


class QuadraticAlgebra:
    """A quadratic quiver algebra truncated at path-length weight T."""

    def __init__(self, quiver: Quiver, relations: RelationSpace, T: int,
                 field: Field, preset=None):
        if T < 2:
            raise ValueError("truncation weight must be at least 2")
        self.quiver = quiver
        self.relations = relations
        self.T = T
        self.field = field
        self.preset = preset
        self.paths = []
        prev = None
        for m in range(T + 1):
            prev = PathBasis(quiver, m, prev)
            self.paths.append(prev)
        self._components = [self._build_component(m) for m in range(T + 1)]
        self._mult_cache = {}

    def _relation_placements(self, m):
        """Spanning vectors of sum of V^i (x) R (x) V^j inside paths of length m."""
        rows = []
        paths_m = self.paths[m]
        rel_vectors = self.relations.basis_vectors()
        paths2 = self.relations.paths2
        for i in range(m - 1):
            j = m - 2 - i
            left = self.paths[i].items
            right = self.paths[j].items
            for rv in rel_vectors:
                first = next(iter(rv))
                bt, bs = paths2.block(first)
                terms = [(paths2.items[k][2], c) for k, c in rv.items()]
                for lt, ls, larr in left:
                    if ls != bt:
                        continue
                    for rt, rs, rarr in right:
                        if bs != rt:
                            continue
                        rows.append({
                            paths_m.index[larr + mid + rarr]: c
                            for mid, c in terms
                        })
        return rows

    def _build_component(self, m):
        paths_m = self.paths[m]
        npaths = len(paths_m)
        if m < 2:
            basis = list(paths_m.items)
            index = {lab[2]: k for k, lab in enumerate(basis)}
            proj = [{k: self.field.one} for k in range(npaths)]
            return _Component(basis, index, proj)
        span = Subspace.from_vectors(self._relation_placements(m), npaths, self.field)
        pivset = set(span.pivots)
        basis = [lab for k, lab in enumerate(paths_m.items) if k not in pivset]
        index = {lab[2]: k for k, lab in enumerate(basis)}
        pos = {}  # path index -> basis position, for non-pivot paths
        for k, lab in enumerate(paths_m.items):
            if k not in pivset:
                pos[k] = index[lab[2]]
        proj = [None] * npaths
        for k in range(npaths):
            if k in pos:
                proj[k] = {pos[k]: self.field.one}
        for prow, pcol in zip(span.basis.rows, span.pivots):
            # pivot path == minus the non-pivot tail of its reduced row
            proj[pcol] = {
                pos[c]: self.field.neg(v) for c, v in prow.items() if c != pcol
            }
        return _Component(basis, index, proj)

    # -- basic queries ------------------------------------------------------

    def dim(self, m: int) -> int:
        self._check_weight(m)
        return len(self._components[m].basis)

    def basis(self, m: int):
        self._check_weight(m)
        return self._components[m].basis

    def block(self, m: int, k: int):
        t, s, _ = self._components[m].basis[k]
        return (t, s)

    def block_indices(self, m: int):
        out = {}
        for k, (t, s, _) in enumerate(self.basis(m)):
            out.setdefault((t, s), []).append(k)
        return out

    def unit(self) -> dict:
        """1_A as a vector over the A_0 basis (sum of vertex idempotents)."""
        return {k: self.field.one for k in range(self.dim(0))}

    def _check_weight(self, m):
        if not 0 <= m <= self.T:
            raise TruncationExceeded(f"weight {m} outside truncation [0, {self.T}]")

    # -- multiplication -----------------------------------------------------

    def project(self, m: int, path_vec: dict) -> dict:
        """Project a vector over the length-m path basis onto A_m."""
        self._check_weight(m)
        comp = self._components[m]
        out: dict = {}
        for k, c in path_vec.items():
            vec_add_scaled(self.field, out, c, comp.proj[k])
        return out

    def multiply_basis(self, r: int, iu: int, s: int, iv: int) -> dict:
        """Product of basis monomials: A_r basis[iu] * A_s basis[iv] in A_{r+s}."""
        key = (r, iu, s, iv)
        cached = self._mult_cache.get(key)
        if cached is not None:
            return cached
        self._check_weight(r + s)
        ut, us, uarr = self._components[r].basis[iu]
        vt, vs, varr = self._components[s].basis[iv]
        if us != vt:
            out: dict = {}
        elif r + s == 0:
            out = {iu: self.field.one}
        else:
            k = self.paths[r + s].index[uarr + varr]
            out = self._components[r + s].proj[k]
        self._mult_cache[key] = out
        return out

    def multiply(self, r: int, uvec: dict, s: int, vvec: dict) -> dict:
        """Bilinear product A_r x A_s -> A_{r+s} on coordinate vectors."""
        self._check_weight(r + s)
        out: dict = {}
        for iu, cu in uvec.items():
            for iv, cv in vvec.items():
                prod = self.multiply_basis(r, iu, s, iv)
                if prod:
                    vec_add_scaled(self.field, out, cu * cv, prod)
        return out

    def monomial_name(self, m: int, k: int) -> str:
        t, s, arrows = self._components[m].basis[k]
        if not arrows:
            return f"e_{self.quiver.vertices[t]}"
        return self.quiver.path_name(arrows)


def build_algebra(quiver: Quiver, relations: RelationSpace, T: int,
                  preset=None) -> QuadraticAlgebra:
    return QuadraticAlgebra(quiver, relations, T, relations.field, preset=preset)


# ---------------------------------------------------------------------------
# presets

def _loop_quiver(n: int) -> Quiver:
    names = [f"x{i+1}" for i in range(n)] if n > 3 else ["x", "y", "z"][:n]
    return Quiver(["*"], [(nm, "*", "*") for nm in names])


def symmetric_preset(n: int, field: Field):
    """Single vertex, n loops, commutation relations x_i x_j - x_j x_i (i<j)."""
    if n < 1:
        raise ValueError("need at least one generator")
    q = _loop_quiver(n)
    paths2 = PathBasis(q, 2)
    one = field.one
    vectors = []
    for i in range(n):
        for j in range(i + 1, n):
            vectors.append({
                paths2.index[(i, j)]: one,
                paths2.index[(j, i)]: field.neg(one),
            })
    return q, RelationSpace(q, vectors, field)


def exterior_preset(n: int, field: Field):
    """Single vertex, n loops, relations x_i x_i and x_i x_j + x_j x_i."""
    if n < 1:
        raise ValueError("need at least one generator")
    q = _loop_quiver(n)
    paths2 = PathBasis(q, 2)
    one = field.one
    vectors = [{paths2.index[(i, i)]: one} for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            vectors.append({
                paths2.index[(i, j)]: one,
                paths2.index[(j, i)]: one,
            })
    return q, RelationSpace(q, vectors, field)


def preprojective_preset(edges, field: Field):
    """Double of an undirected graph with one mesh relation per vertex.

    Each edge u-v contributes arrows a: u->v and a*: v->u; the relation at
    vertex i is the sum of a a* over original arrows into i minus the sum
    of a* a over original arrows out of i, read in the (i, i) block.
    """
    edges = list(edges)
    if not edges:
        raise ValueError("graph must have at least one edge")
    vertices = []
    for u, v in edges:
        if u == v:
            raise ValueError("self-loops are not allowed")
        for x in (u, v):
            if x not in vertices:
                vertices.append(x)
    arrows = []
    for k, (u, v) in enumerate(edges):
        arrows.append((f"a{k+1}", u, v))
        arrows.append((f"a{k+1}*", v, u))
    q = Quiver(vertices, arrows)
    paths2 = PathBasis(q, 2)
    one = field.one
    vectors = []
    for i in range(q.n_vertices):
        rel: dict = {}
        for k in range(len(edges)):
            a, astar = 2 * k, 2 * k + 1
            if q.target[a] == i:  # a a*: word (a, a*), block (i, i)
                vec_add_scaled(field, rel, one, {paths2.index[(a, astar)]: one})
            if q.source[a] == i:  # a* a: word (a*, a), block (i, i)
                vec_add_scaled(field, rel, field.neg(one),
                               {paths2.index[(astar, a)]: one})
        if rel:
            vectors.append(rel)
    return q, RelationSpace(q, vectors, field)


# ---------------------------------------------------------------------------
# graded bimodules

class GradedBimodule:
    """Weight-graded A-bimodule given by per-arrow action matrices.

    Concrete subclasses provide the bases and the arrow actions; actions
    by arbitrary algebra elements are composed from those arrow by arrow
    (left action by a word applies its last letter first; right action its
    first letter first).
    """

    algebra: QuadraticAlgebra
    wmin: int
    wmax: int
    is_regular = False

    def __init__(self):
        self._larrow_cache = {}
        self._rarrow_cache = {}

    def dim(self, w: int) -> int:
        raise NotImplementedError

    def block(self, w: int, k: int):
        raise NotImplementedError

    def _arrow_left(self, w: int, a: int) -> Matrix:
        raise NotImplementedError

    def _arrow_right(self, w: int, a: int) -> Matrix:
        raise NotImplementedError

    def label(self, w: int, k: int) -> str:
        raise NotImplementedError

    @property
    def field(self) -> Field:
        return self.algebra.field

    def in_range(self, w: int) -> bool:
        return self.wmin <= w <= self.wmax

    def _check_weight(self, w: int) -> bool:
        """True when the component is genuinely zero (below range);
        loud failure beyond the truncation."""
        if w > self.wmax:
            raise TruncationExceeded(
                f"weight {w} beyond bimodule truncation {self.wmax}")
        return w < self.wmin

    def block_indices(self, w: int):
        out = {}
        for k in range(self.dim(w)):
            out.setdefault(self.block(w, k), []).append(k)
        return out

    def arrow_left(self, w: int, a: int) -> Matrix:
        key = (w, a)
        m = self._larrow_cache.get(key)
        if m is None:
            m = self._arrow_left(w, a)
            self._larrow_cache[key] = m
        return m

    def arrow_right(self, w: int, a: int) -> Matrix:
        key = (w, a)
        m = self._rarrow_cache.get(key)
        if m is None:
            m = self._arrow_right(w, a)
            self._rarrow_cache[key] = m
        return m

    def _project_block(self, w, mvec, side, vertex):
        out = {}
        for k, c in mvec.items():
            lv, rv = self.block(w, k)
            if (lv if side == 0 else rv) == vertex:
                out[k] = c
        return out

    def act_left(self, r: int, avec: dict, w: int, mvec: dict) -> dict:
        """(element of A_r) . (element of M_w) -> element of M_{w+r}."""
        if not avec or not mvec:
            return {}
        self._check_weight(w + r)
        field = self.field
        comp = self.algebra.basis(r)
        out: dict = {}
        for iu, cu in avec.items():
            t, s, arrows = comp[iu]
            if arrows:
                vec = mvec
                ww = w
                for a in reversed(arrows):
                    vec = self.arrow_left(ww, a).mul_vec(vec)
                    ww += 1
                    if not vec:
                        break
            else:
                vec = self._project_block(w, mvec, 0, t)
            if vec:
                vec_add_scaled(field, out, cu, vec)
        return out

    def act_right(self, w: int, mvec: dict, r: int, avec: dict) -> dict:
        """(element of M_w) . (element of A_r) -> element of M_{w+r}."""
        if not avec or not mvec:
            return {}
        self._check_weight(w + r)
        field = self.field
        comp = self.algebra.basis(r)
        out: dict = {}
        for iu, cu in avec.items():
            t, s, arrows = comp[iu]
            if arrows:
                vec = mvec
                ww = w
                for a in arrows:
                    vec = self.arrow_right(ww, a).mul_vec(vec)
                    ww += 1
                    if not vec:
                        break
            else:
                vec = self._project_block(w, mvec, 1, t)
            if vec:
                vec_add_scaled(field, out, cu, vec)
        return out


class AlgebraBimodule(GradedBimodule):
    """A itself, with the regular actions."""

    is_regular = True

    def __init__(self, algebra: QuadraticAlgebra):
        super().__init__()
        self.algebra = algebra
        self.wmin = 0
        self.wmax = algebra.T

    def dim(self, w):
        return 0 if self._check_weight(w) else self.algebra.dim(w)

    def block(self, w, k):
        return self.algebra.block(w, k)

    def label(self, w, k):
        return self.algebra.monomial_name(w, k)

    def _arrow_matrix(self, w, a, side):
        A = self.algebra
        entries = {}
        arrow = {a: A.field.one}
        for k in range(A.dim(w)):
            if side == 0:
                prod = A.multiply(1, arrow, w, {k: A.field.one})
            else:
                prod = A.multiply(w, {k: A.field.one}, 1, arrow)
            for i, c in prod.items():
                entries[(i, k)] = c
        return Matrix.from_entries(A.dim(w + 1), A.dim(w), entries, A.field)

    def _arrow_left(self, w, a):
        return self._arrow_matrix(w, a, 0)

    def _arrow_right(self, w, a):
        return self._arrow_matrix(w, a, 1)


class EnvelopingBimodule(GradedBimodule):
    """A (x) A with the outer actions  a.(x (x) y).b = ax (x) yb.

    Weight w component is the direct sum of A_r (x) A_{w-r}; the basis is
    indexed by triples (r, iu, iv) in lexicographic order.
    """

    def __init__(self, algebra: QuadraticAlgebra, wmax=None):
        super().__init__()
        self.algebra = algebra
        self.wmin = 0
        self.wmax = algebra.T if wmax is None else wmax
        if self.wmax > algebra.T:
            raise TruncationExceeded("enveloping bimodule beyond algebra truncation")
        self._bases = {}
        self._index = {}
        for w in range(self.wmax + 1):
            labels = []
            for r in range(w + 1):
                s = w - r
                for iu in range(algebra.dim(r)):
                    for iv in range(algebra.dim(s)):
                        labels.append((r, iu, iv))
            self._bases[w] = labels
            self._index[w] = {lab: k for k, lab in enumerate(labels)}

    def dim(self, w):
        return 0 if self._check_weight(w) else len(self._bases[w])

    def basis(self, w):
        return self._bases[w]

    def index(self, w, label):
        return self._index[w][label]

    def block(self, w, k):
        r, iu, iv = self._bases[w][k]
        s = w - r
        return (self.algebra.block(r, iu)[0], self.algebra.block(s, iv)[1])

    def label(self, w, k):
        r, iu, iv = self._bases[w][k]
        s = w - r
        return (f"{self.algebra.monomial_name(r, iu)}"
                f"(x){self.algebra.monomial_name(s, iv)}")

    def _arrow_side(self, w, a, side):
        A = self.algebra
        entries = {}
        idx = self._index[w + 1]
        one = A.field.one
        for k, (r, iu, iv) in enumerate(self._bases[w]):
            s = w - r
            if side == 0:
                prod = A.multiply(1, {a: one}, r, {iu: one})
                for i, c in prod.items():
                    entries[(idx[(r + 1, i, iv)], k)] = c
            else:
                prod = A.multiply(s, {iv: one}, 1, {a: one})
                for i, c in prod.items():
                    entries[(idx[(r, iu, i)], k)] = c
        return Matrix.from_entries(self.dim(w + 1), self.dim(w), entries, A.field)

    def _arrow_left(self, w, a):
        return self._arrow_side(w, a, 0)

    def _arrow_right(self, w, a):
        return self._arrow_side(w, a, 1)

    def product(self, w1: int, vec1: dict, w2: int, vec2: dict) -> dict:
        """The algebra product of A (x) A^op:
        (x (x) y) . (x' (x) y') = x x' (x) y' y."""
        A = self.algebra
        out: dict = {}
        idx = self._index[w1 + w2]
        for k1, c1 in vec1.items():
            r1, iu1, iv1 = self._bases[w1][k1]
            s1 = w1 - r1
            for k2, c2 in vec2.items():
                r2, iu2, iv2 = self._bases[w2][k2]
                s2 = w2 - r2
                left = A.multiply(r1, {iu1: A.field.one}, r2, {iu2: A.field.one})
                right = A.multiply(s2, {iv2: A.field.one}, s1, {iv1: A.field.one})
                coeff = c1 * c2
                for i, ci in left.items():
                    for j, cj in right.items():
                        key = idx[(r1 + r2, i, j)]
                        vec_add_scaled(A.field, out, coeff * ci * cj, {key: A.field.one})
        return out


class ShiftedBimodule(GradedBimodule):
    """The same bimodule with all weights shifted up by a constant.

    Shifting the regular bimodule gives a cheap nontrivial A-central
    coefficient module for a commutative algebra.
    """

    def __init__(self, inner: GradedBimodule, shift: int):
        super().__init__()
        self.inner = inner
        self.shift = shift
        self.algebra = inner.algebra
        self.wmin = inner.wmin + shift
        self.wmax = inner.wmax + shift

    def dim(self, w):
        return 0 if self._check_weight(w) else self.inner.dim(w - self.shift)

    def block(self, w, k):
        return self.inner.block(w - self.shift, k)

    def label(self, w, k):
        return self.inner.label(w - self.shift, k)

    def _arrow_left(self, w, a):
        return self.inner.arrow_left(w - self.shift, a)

    def _arrow_right(self, w, a):
        return self.inner.arrow_right(w - self.shift, a)
