"""Exact sparse linear algebra: matrices, subspaces, kernels, homology.

Vectors are sparse ``{index: scalar}`` dicts (no stored zeros), matrices a
tuple of sparse rows.  Subspaces are canonically represented by their
reduced row echelon basis, so subspace equality is literally basis
equality.  Everything is immutable after construction and safe to share;
all operations are pure functions.

Row reduction dispatches to a compiled kernel when available (see
``_rref_py`` / ``_rref_cy``); select explicitly with the environment
variable ``KOSZULCALC_BACKEND=py|cy``.
"""

from __future__ import annotations

import os

from .fields import Field, Rationals

_backend_choice = os.environ.get("KOSZULCALC_BACKEND", "")
if _backend_choice == "py":
    from . import _rref_py as _kernel
elif _backend_choice == "cy":
    from . import _rref_cy as _kernel  # type: ignore[no-redef]
else:
    try:
        from . import _rref_cy as _kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _rref_py as _kernel  # type: ignore[no-redef]


def backend_name() -> str:
    return _kernel.BACKEND


class CompositionNotZero(Exception):
    """The two maps handed to `homology` do not compose to zero."""


# ---------------------------------------------------------------------------
# sparse vector helpers

def vec_add_scaled(field: Field, target: dict, coeff, src: dict) -> None:
    """target += coeff * src, in place, dropping created zeros."""
    if not coeff:
        return
    p = field.char
    if p:
        for k, v in src.items():
            w = (target.get(k, 0) + coeff * v) % p
            if w:
                target[k] = w
            elif k in target:
                del target[k]
    else:
        for k, v in src.items():
            w = target.get(k, 0) + coeff * v
            if w:
                target[k] = w
            elif k in target:
                del target[k]


def vec_scale(field: Field, coeff, src: dict) -> dict:
    if not coeff:
        return {}
    p = field.char
    if p:
        return {k: c for k, v in src.items() if (c := coeff * v % p)}
    return {k: coeff * v for k, v in src.items()}


def vec_neg(field: Field, src: dict) -> dict:
    p = field.char
    if p:
        return {k: -v % p for k, v in src.items()}
    return {k: -v for k, v in src.items()}


class Matrix:
    """Immutable sparse matrix over a fixed exact field."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, nrows: int, ncols: int, rows, field: Field):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(dict(r) for r in rows)
        self.field = field
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            for c, v in r.items():
                if not 0 <= c < ncols:
                    raise ValueError("column index out of bounds")
                if not v:
                    raise ValueError("stored zero entry")

    @classmethod
    def from_entries(cls, nrows, ncols, entries, field):
        rows = [{} for _ in range(nrows)]
        for (i, j), v in entries.items():
            if v:
                rows[i][j] = v
        return cls(nrows, ncols, rows, field)

    @classmethod
    def zero(cls, nrows, ncols, field):
        return cls(nrows, ncols, [{} for _ in range(nrows)], field)

    @classmethod
    def identity(cls, n, field):
        return cls(n, n, [{i: field.one} for i in range(n)], field)

    def entry(self, i, j):
        return self.rows[i].get(j, self.field.zero)

    def mul_vec(self, v: dict) -> dict:
        p = self.field.char
        out = {}
        for i, row in enumerate(self.rows):
            s = 0
            for c, x in row.items():
                w = v.get(c)
                if w:
                    s += x * w
            if p:
                s %= p
            if s:
                out[i] = s if p else self.field.coerce(s)
        return out

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = []
        for row in self.rows:
            acc: dict = {}
            for k, x in row.items():
                vec_add_scaled(self.field, acc, x, other.rows[k])
            rows.append(acc)
        return Matrix(self.nrows, other.ncols, rows, self.field)

    def transpose(self) -> "Matrix":
        rows = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for c, v in row.items():
                rows[c][i] = v
        return Matrix(self.ncols, self.nrows, rows, self.field)

    def columns(self):
        """Columns as sparse vectors, in column order."""
        cols = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for c, v in row.items():
                cols[c][i] = v
        return cols

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field}, nnz={sum(len(r) for r in self.rows)})"


def _run_rref(rows, ncols, field):
    if field.char == 0:
        return _kernel.rref_frac(rows, ncols)
    return _kernel.rref_mod(rows, ncols, field.char)


def rref(m: Matrix):
    """Reduced row echelon form: (matrix, pivot columns, rank)."""
    rows, pivots = _run_rref(m.rows, m.ncols, m.field)
    rank = len(rows)
    rows += [{} for _ in range(m.nrows - rank)]
    return Matrix(m.nrows, m.ncols, rows, m.field), list(pivots), rank


class Subspace:
    """A subspace of F^ambient with a canonical RREF basis, one vector per row."""

    __slots__ = ("ambient", "basis", "pivots", "field")

    def __init__(self, ambient: int, basis: Matrix, pivots, field: Field):
        self.ambient = ambient
        self.basis = basis
        self.pivots = tuple(pivots)
        self.field = field

    @classmethod
    def from_vectors(cls, vectors, ambient, field):
        rows, pivots = _run_rref(list(vectors), ambient, field)
        return cls(ambient, Matrix(len(rows), ambient, rows, field), pivots, field)

    @classmethod
    def zero(cls, ambient, field):
        return cls(ambient, Matrix(0, ambient, [], field), (), field)

    @classmethod
    def full(cls, ambient, field):
        return cls(ambient, Matrix.identity(ambient, field), range(ambient), field)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def contains(self, v: dict) -> bool:
        return coordinates(v, self) is not None

    def vectors(self):
        return list(self.basis.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.pivots))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient} over {self.field})"


def kernel_basis(m: Matrix) -> Subspace:
    """The solution space {v : m v = 0} with canonical basis."""
    rrows, pivots = _run_rref(m.rows, m.ncols, m.field)
    pivset = set(pivots)
    one = m.field.one
    vectors = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = {free: one}
        for prow, pcol in zip(rrows, pivots):
            x = prow.get(free)
            if x:
                v[pcol] = -x if m.field.char == 0 else (-x) % m.field.char
        vectors.append(v)
    return Subspace.from_vectors(vectors, m.ncols, m.field)


def intersect(spaces) -> Subspace:
    """Intersection of subspaces of a common ambient space."""
    spaces = list(spaces)
    if not spaces:
        raise ValueError("empty intersection list")
    ambient = spaces[0].ambient
    field = spaces[0].field
    for s in spaces[1:]:
        if s.ambient != ambient:
            raise ValueError("mismatched ambient dimension")
    acc = spaces[0]
    for s in spaces[1:]:
        acc = _pair_intersect(acc, s)
    return acc


def _pair_intersect(u: Subspace, w: Subspace) -> Subspace:
    if u.dim == 0 or w.dim == 0:
        return Subspace.zero(u.ambient, u.field)
    if u.dim == u.ambient:
        return w
    if w.dim == w.ambient:
        return u
    # kernel of [U^T | -W^T]: solutions give c with U^T c1 = W^T c2.
    d1 = u.dim
    rows = [{} for _ in range(u.ambient)]
    for j, bv in enumerate(u.basis.rows):
        for k, v in bv.items():
            rows[k][j] = v
    for j, bv in enumerate(w.basis.rows):
        for k, v in bv.items():
            rows[k][d1 + j] = -v if u.field.char == 0 else (-v) % u.field.char
    m = Matrix(u.ambient, d1 + w.dim, rows, u.field)
    ker = kernel_basis(m)
    vectors = []
    for cv in ker.basis.rows:
        vec: dict = {}
        for j, c in cv.items():
            if j < d1:
                vec_add_scaled(u.field, vec, c, u.basis.rows[j])
        vectors.append(vec)
    return Subspace.from_vectors(vectors, u.ambient, u.field)


def coordinates(v: dict, s: Subspace):
    """Coordinates of v in the basis of s, or None when v is not in s.

    The RREF basis makes this a read-off: the candidate coordinate of
    basis vector i is v[pivot_i]; the reconstruction is then checked
    exactly (exact field, zero tolerance).
    """
    field = s.field
    coords = [v.get(p, field.zero) for p in s.pivots]
    rest = dict(v)
    for c, row in zip(coords, s.basis.rows):
        if c:
            vec_add_scaled(field, rest, -c, row)
    if rest:
        return None
    return coords


def solve_many(m: Matrix, rhss):
    """Solve m x = rhs for every rhs at once.

    Requires m to have full column rank, so each solution is unique.
    Raises ValueError when the rank is deficient or any system is
    inconsistent.
    """
    rhss = list(rhss)
    naug = m.ncols + len(rhss)
    aug = [dict(row) for row in m.rows]
    for j, rhs in enumerate(rhss):
        for i, w in rhs.items():
            aug[i][m.ncols + j] = w
    rrows, pivots = _run_rref(aug, naug, m.field)
    main = [p for p in pivots if p < m.ncols]
    if len(main) != m.ncols:
        if any(p >= m.ncols for p in pivots):
            raise ValueError("inconsistent linear system")
        raise ValueError("matrix does not have full column rank")
    if any(p >= m.ncols for p in pivots):
        raise ValueError("inconsistent linear system")
    sols = [{} for _ in rhss]
    for prow, pcol in zip(rrows, pivots):
        for c, v in prow.items():
            if c >= m.ncols:
                sols[c - m.ncols][pcol] = v
    return sols


class TaggedEchelon:
    """Incrementally grown echelon basis with per-row tags.

    Rows are reduced against *earlier* rows only and never mutated after
    insertion, so each row is an honest combination of the vectors added
    up to that point; expressing v as a combination of rows therefore
    attributes tagged coefficients faithfully.  (Full mutual reduction
    would mix later tagged rows into earlier untagged ones and corrupt
    the attribution.)  Used for writing cocycles in a chosen homology
    representative basis modulo boundaries: add the boundary columns
    untagged first, then the kernel vectors tagged.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows = []  # (pivot, row with row[pivot] == 1, tag), insertion order

    def add(self, v: dict, tag=None):
        """Insert v (reduced against current rows); returns pivot or None if dependent."""
        r = self._reduce(dict(v))
        if not r:
            return None
        piv = min(r)
        inv = self.field.inv(r[piv])
        if inv != self.field.one:
            r = vec_scale(self.field, inv, r)
        self.rows.append((piv, r, tag))
        return piv

    def _reduce(self, v: dict) -> dict:
        # row i has zeros at the pivots of rows j < i, so one pass in
        # insertion order clears every pivot from v
        for piv, row, _tag in self.rows:
            x = v.get(piv)
            if x:
                vec_add_scaled(self.field, v, self.field.neg(x), row)
        return v

    def express(self, v: dict):
        """Write v as a combination of rows: {tag: coeff} (untagged rows
        contribute silently).  Returns None if v is outside the row span."""
        v = dict(v)
        out = {}
        for piv, row, tag in self.rows:
            x = v.get(piv)
            if x:
                vec_add_scaled(self.field, v, self.field.neg(x), row)
                if tag is not None:
                    out[tag] = self.field.add(out.get(tag, self.field.zero), x)
        if v:
            return None
        return {t: c for t, c in out.items() if c}


def homology(d_in: Matrix, d_out: Matrix):
    """Homology at the middle of  C_in --d_in--> C --d_out--> C_out.

    Returns (dim, representatives) where the representatives span a
    complement of im(d_in) inside ker(d_out).  Raises CompositionNotZero
    when d_out . d_in != 0, which signals a bug upstream in the calculus.
    """
    if d_in.ncols and not d_out.matmul(d_in).is_zero():
        raise CompositionNotZero(f"{d_out!r} . {d_in!r} != 0")
    ker = kernel_basis(d_out)
    ech = TaggedEchelon(d_in.field)
    for col in d_in.columns():
        ech.add(col)
    rank_in = len(ech.rows)
    reps = []
    for v in ker.basis.rows:
        piv = ech.add(v, tag="rep")
        if piv is not None:
            reps.append(ech.rows[-1][1])
    dim = ker.dim - rank_in
    assert dim == len(reps)
    rep_space = Subspace.from_vectors(reps, d_out.ncols, d_in.field)
    return dim, rep_space
