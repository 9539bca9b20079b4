"""Koszul cochains and chains, their differentials, cup and cap products,
and the per-weight (co)homology tables with class arithmetic.

Gradings.  A p-cochain with coefficient weight w is a block-respecting
map W_p -> M_w; its total degree is t = w - p and the cochain
differential raises (p, w) by (1, 1), so t is preserved.  A p-chain of
coefficient weight w lives in M_w (x) W_p over the vertex ring; its total
degree is t = w + p and the chain differential moves (p, w) by (-1, +1).
All homology is therefore computed slice by slice at fixed t.

Sign conventions (fixed here once, exercised by the test suite):

  cochain differential   (b f)(x_1..x_{p+1}) = f(x_1..x_p) x_{p+1}
                                               - (-1)^p x_1 f(x_2..x_{p+1})
  cup                    (f u g)(x_1..x_{p+q}) = (-1)^{pq} f(..) g(..)
  right cap              z n f = (-1)^{pq}  m f(x_1..x_p) (x) x_{p+1}..x_q
  left cap               f n z = (-1)^{(q-p)p} f(x_{q-p+1}..x_q) m (x) x_1..x_{q-p}

and the chain differential is the graded commutator with the degree-one
cocycle that embeds the arrow space into the algebra:

  b z = -(e n z) + (-1)^q (z n e).
"""

from __future__ import annotations

from .algebra import AlgebraBimodule, GradedBimodule, QuadraticAlgebra
from .complex import KoszulComplex
from .linalg import Matrix, TaggedEchelon, homology, kernel_basis, vec_add_scaled
from .wspaces import WSpaces

__all__ = [
    "Cochain", "Chain", "Calculus", "HKTable", "HKSlice", "HKClass",
    "SquareNotZero", "PairingUnsupported",
]


class PairingUnsupported(Exception):
    """Cup/cap products need at least one factor with regular coefficients."""


class SquareNotZero(Exception):
    """The induced differential on classes failed to square to zero."""


class Cochain:
    """A block-respecting linear map W_p -> M_w, stored column-wise."""

    __slots__ = ("p", "w", "module", "cols")

    def __init__(self, p: int, w: int, module: GradedBimodule, cols):
        self.p = p
        self.w = w
        self.module = module
        self.cols = [dict(c) for c in cols]

    @property
    def t(self) -> int:
        return self.w - self.p

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def scaled(self, coeff) -> "Cochain":
        field = self.module.field
        if not coeff:
            return Cochain(self.p, self.w, self.module, [{} for _ in self.cols])
        return Cochain(self.p, self.w, self.module,
                       [{k: coeff * v if not field.char else coeff * v % field.char
                         for k, v in c.items()} for c in self.cols])

    def add(self, other: "Cochain") -> "Cochain":
        assert (self.p, self.w) == (other.p, other.w)
        field = self.module.field
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            vec_add_scaled(field, c, field.one, b)
            cols.append(c)
        return Cochain(self.p, self.w, self.module, cols)

    def __eq__(self, other):
        return (isinstance(other, Cochain)
                and (self.p, self.w) == (other.p, other.w)
                and self.module is other.module
                and self.cols == other.cols)

    def __repr__(self):
        return f"Cochain(p={self.p}, w={self.w}, nnz={sum(len(c) for c in self.cols)})"


class Chain:
    """An element of M_w (x) W_p over the vertex ring, as sparse pair coords."""

    __slots__ = ("p", "w", "module", "coords")

    def __init__(self, p: int, w: int, module: GradedBimodule, coords: dict):
        self.p = p
        self.w = w
        self.module = module
        self.coords = dict(coords)

    @property
    def t(self) -> int:
        return self.w + self.p

    def is_zero(self) -> bool:
        return not self.coords

    def scaled(self, coeff) -> "Chain":
        field = self.module.field
        if not coeff:
            return Chain(self.p, self.w, self.module, {})
        if field.char:
            return Chain(self.p, self.w, self.module,
                         {k: c for k, v in self.coords.items()
                          if (c := coeff * v % field.char)})
        return Chain(self.p, self.w, self.module,
                     {k: coeff * v for k, v in self.coords.items()})

    def add(self, other: "Chain") -> "Chain":
        assert (self.p, self.w) == (other.p, other.w)
        field = self.module.field
        coords = dict(self.coords)
        for k, v in other.coords.items():
            vec_add_scaled(field, coords, field.one, {k: v})
        return Chain(self.p, self.w, self.module, coords)

    def __eq__(self, other):
        return (isinstance(other, Chain)
                and (self.p, self.w) == (other.p, other.w)
                and self.module is other.module
                and self.coords == other.coords)

    def __repr__(self):
        return f"Chain(p={self.p}, w={self.w}, nnz={len(self.coords)})"


class Calculus:
    """All cochain/chain operations for one algebra, sharing caches."""

    def __init__(self, algebra: QuadraticAlgebra, wspaces: WSpaces | None = None):
        self.A = algebra
        self.W = wspaces if wspaces is not None else WSpaces(algebra)
        self.field = algebra.field
        self.regular = AlgebraBimodule(algebra)

    # -- constructors ---------------------------------------------------------

    def zero_cochain(self, p: int, w: int, module=None) -> Cochain:
        module = module or self.regular
        return Cochain(p, w, module, [{} for _ in range(self.W.dim(p))])

    def cochain(self, p: int, w: int, cols, module=None) -> Cochain:
        """Build and block-validate a cochain from columns over M_w."""
        module = module or self.regular
        f = Cochain(p, w, module, cols)
        self._validate_cochain(f)
        return f

    def _validate_cochain(self, f: Cochain):
        if len(f.cols) != self.W.dim(f.p):
            raise ValueError("column count does not match the W basis")
        for a, col in enumerate(f.cols):
            if not col:
                continue
            wb = self.W.block(f.p, a)
            for im in col:
                if f.module.block(f.w, im) != wb:
                    raise ValueError(
                        f"cochain breaks vertex blocks: W block {wb}, "
                        f"value block {f.module.block(f.w, im)}")

    def chain(self, p: int, w: int, coords, module=None) -> Chain:
        module = module or self.regular
        z = Chain(p, w, module, coords)
        for (im, iw) in z.coords:
            i, j = module.block(w, im)
            jj, ii = self.W.block(p, iw)
            if (i, j) != (ii, jj):
                raise ValueError(
                    f"chain pairs incompatible blocks {(i, j)} and {(jj, ii)}")
        return z

    def fundamental_cocycle(self) -> Cochain:
        """The degree-1 cocycle sending every arrow to itself in A_1."""
        one = self.field.one
        return Cochain(1, 1, self.regular,
                       [{a: one} for a in range(self.A.quiver.n_arrows)])

    def unit_cochain(self) -> Cochain:
        """The 0-cochain sending each vertex idempotent to itself."""
        one = self.field.one
        return Cochain(0, 0, self.regular,
                       [{i: one} for i in range(self.A.quiver.n_vertices)])

    # -- differentials --------------------------------------------------------

    def b_cochain(self, f: Cochain) -> Cochain:
        """The cochain differential, bidegree (+1, +1)."""
        W, M, field = self.W, f.module, self.field
        p, w = f.p, f.w
        if W.dim(p + 1) == 0:
            return Cochain(p + 1, w + 1, M, [])
        M._check_weight(w + 1)
        cols = [dict() for _ in range(W.dim(p + 1))]
        sign = field.one if p % 2 == 0 else field.neg(field.one)
        pairs_r, rows_r = W.decompose(p, 1)
        pairs_l, rows_l = W.decompose(1, p)
        for k in range(W.dim(p + 1)):
            acc = cols[k]
            for j, cj in rows_r[k].items():
                a, arrow = pairs_r[j]
                if f.cols[a]:
                    img = M.arrow_right(w, arrow).mul_vec(f.cols[a])
                    vec_add_scaled(field, acc, cj, img)
            for j, cj in rows_l[k].items():
                arrow, a = pairs_l[j]
                if f.cols[a]:
                    img = M.arrow_left(w, arrow).mul_vec(f.cols[a])
                    vec_add_scaled(field, acc, field.neg(sign) * cj, img)
        return Cochain(p + 1, w + 1, M, cols)

    def b_chain(self, z: Chain) -> Chain:
        """The chain differential: minus the graded cap commutator with
        the fundamental cocycle, bidegree (-1, +1)."""
        e = self.fundamental_cocycle()
        left = self.cap_left(e, z)
        right = self.cap_right(z, e)
        sign = self.field.one if z.p % 2 == 0 else self.field.neg(self.field.one)
        return left.scaled(self.field.neg(self.field.one)).add(right.scaled(sign))

    # -- products -------------------------------------------------------------

    def _pair_action(self, mod_f, wf, fval, mod_g, wg, gval):
        """fval . gval where at least one factor has regular coefficients."""
        if mod_f.is_regular:
            return mod_g.act_left(wf, fval, wg, gval), mod_g
        if mod_g.is_regular:
            return mod_f.act_right(wf, fval, wg, gval), mod_f
        raise PairingUnsupported(
            "cup/cap needs A-coefficients on at least one side")

    def cup(self, f: Cochain, g: Cochain) -> Cochain:
        """Cup product of cochains; coefficients pair through the A side."""
        W, field = self.W, self.field
        p, q = f.p, g.p
        wout = f.w + g.w
        if f.module.is_regular:
            mod_out = g.module
        elif g.module.is_regular:
            mod_out = f.module
        else:
            raise PairingUnsupported(
                "cup needs A-coefficients on at least one side")
        n = p + q
        if W.dim(n) == 0:
            return Cochain(n, wout, mod_out, [])
        mod_out._check_weight(wout)
        cols = [dict() for _ in range(W.dim(n))]
        sign = field.one if (p * q) % 2 == 0 else field.neg(field.one)
        pairs, rows = W.decompose(p, q)
        for k in range(W.dim(n)):
            acc = cols[k]
            for j, cj in rows[k].items():
                a, b = pairs[j]
                fv, gv = f.cols[a], g.cols[b]
                if fv and gv:
                    val, _ = self._pair_action(f.module, f.w, fv, g.module, g.w, gv)
                    vec_add_scaled(field, acc, sign * cj, val)
        return Cochain(n, wout, mod_out, cols)

    def cap_right(self, z: Chain, f: Cochain) -> Chain:
        """z n f: the cochain eats the left factors of the chain tensor."""
        W, field = self.W, self.field
        p, q = f.p, z.p
        mod_out = _cap_module(z, f)
        wout = z.w + f.w
        if p > q or not z.coords:
            return Chain(q - p, wout, mod_out, {})
        mod_out._check_weight(wout)
        sign = field.one if (p * q) % 2 == 0 else field.neg(field.one)
        pairs, rows = W.decompose(p, q - p)
        coords: dict = {}
        for (im, iw), c in z.coords.items():
            for j, cj in rows[iw].items():
                a, b = pairs[j]
                fv = f.cols[a]
                if not fv:
                    continue
                if f.module.is_regular:
                    # m . f(w_a) via the right action on M
                    val = z.module.act_right(z.w, {im: field.one}, f.w, fv)
                else:
                    # z over A: m f(w_a) is the left action of m on the
                    # cochain's coefficient module
                    val = f.module.act_left(z.w, {im: field.one}, f.w, fv)
                for i, cv in val.items():
                    vec_add_scaled(field, coords, sign * c * cj * cv,
                                   {(i, b): field.one})
        return Chain(q - p, wout, mod_out, coords)

    def cap_left(self, f: Cochain, z: Chain) -> Chain:
        """f n z: the cochain eats the right factors of the chain tensor."""
        W, field = self.W, self.field
        p, q = f.p, z.p
        mod_out = _cap_module(z, f)
        wout = z.w + f.w
        if p > q or not z.coords:
            return Chain(q - p, wout, mod_out, {})
        mod_out._check_weight(wout)
        sign = field.one if ((q - p) * p) % 2 == 0 else field.neg(field.one)
        pairs, rows = W.decompose(q - p, p)
        coords: dict = {}
        for (im, iw), c in z.coords.items():
            for j, cj in rows[iw].items():
                b, a = pairs[j]
                fv = f.cols[a]
                if not fv:
                    continue
                if f.module.is_regular:
                    # f(w_a) . m via the left action on M
                    val = z.module.act_left(f.w, fv, z.w, {im: field.one})
                else:
                    # z over A: f(w_a) m is the right action of m on the
                    # cochain's coefficient module
                    val = f.module.act_right(f.w, fv, z.w, {im: field.one})
                for i, cv in val.items():
                    vec_add_scaled(field, coords, sign * c * cj * cv,
                                   {(i, b): field.one})
        return Chain(q - p, wout, mod_out, coords)

    # -- cap action on the Koszul complex --------------------------------------

    def cap_left_K(self, K: KoszulComplex, f: Cochain, p: int, w: int,
                   coords: dict) -> tuple[int, int, dict]:
        """f n x for x in the (p, w) slice of K(A): the cochain acts on the
        right outer factor.  f must have regular coefficients."""
        q = p
        pf = f.p
        field = self.field
        # the cochain trades pf tensor factors for a weight-f.w algebra
        # element, so the total path weight moves by f.w - pf
        wout = w + f.w - pf
        if pf > q:
            return q - pf, wout, {}
        sign = field.one if ((q - pf) * pf) % 2 == 0 else field.neg(field.one)
        pairs, rows = self.W.decompose(q - pf, pf)
        src = K.basis(q, w)
        dst = K.index(q - pf, wout)
        out: dict = {}
        A = self.A
        for pos, c in coords.items():
            r, ia, iw, ib = src[pos]
            s = w - q - r
            for j, cj in rows[iw].items():
                b, a = pairs[j]
                fv = f.cols[a]
                if not fv:
                    continue
                prod = A.multiply(f.w, fv, s, {ib: field.one})
                for ib2, cb in prod.items():
                    key = dst[(r, ia, b, ib2)]
                    vec_add_scaled(field, out, sign * c * cj * cb, {key: field.one})
        return q - pf, wout, out

    def cap_right_K(self, K: KoszulComplex, p: int, w: int, coords: dict,
                    f: Cochain) -> tuple[int, int, dict]:
        """x n f for x in the (p, w) slice of K(A): the cochain acts on the
        left outer factor."""
        q = p
        pf = f.p
        field = self.field
        wout = w + f.w - pf
        if pf > q:
            return q - pf, wout, {}
        sign = field.one if (pf * q) % 2 == 0 else field.neg(field.one)
        pairs, rows = self.W.decompose(pf, q - pf)
        src = K.basis(q, w)
        dst = K.index(q - pf, wout)
        out: dict = {}
        A = self.A
        for pos, c in coords.items():
            r, ia, iw, ib = src[pos]
            for j, cj in rows[iw].items():
                a, b = pairs[j]
                fv = f.cols[a]
                if not fv:
                    continue
                prod = A.multiply(r, {ia: field.one}, f.w, fv)
                for ia2, ca in prod.items():
                    key = dst[(r + f.w, ia2, b, ib)]
                    vec_add_scaled(field, out, sign * c * cj * ca, {key: field.one})
        return q - pf, wout, out

    # -- random elements (seeded property checks) ------------------------------

    def random_cochain(self, rng, p: int, w: int, module=None) -> Cochain:
        module = module or self.regular
        field = self.field
        cols = []
        bidx = module.block_indices(w)
        for a in range(self.W.dim(p)):
            wb = self.W.block(p, a)
            col = {}
            for im in bidx.get(wb, ()):
                c = self._random_scalar(rng)
                if c:
                    col[im] = c
            cols.append(col)
        return Cochain(p, w, module, cols)

    def random_chain(self, rng, p: int, w: int, module=None) -> Chain:
        module = module or self.regular
        field = self.field
        coords = {}
        widx = self.W.block_indices(p)
        for im in range(module.dim(w)):
            i, j = module.block(w, im)
            for iw in widx.get((j, i), ()):
                c = self._random_scalar(rng)
                if c:
                    coords[(im, iw)] = c
        return Chain(p, w, module, coords)

    def random_K_element(self, rng, K: KoszulComplex, p: int, w: int) -> dict:
        out = {}
        for pos in range(K.dim(p, w)):
            c = self._random_scalar(rng)
            if c:
                out[pos] = c
        return out

    def _random_scalar(self, rng):
        field = self.field
        if field.char:
            return rng.randrange(field.char)
        return field.coerce(rng.randint(-2, 2))

    # -- homology tables --------------------------------------------------------

    def hk(self, module=None, direction: str = "cohomology",
           tmax: int | None = None) -> "HKTable":
        module = module or self.regular
        if direction not in ("cohomology", "homology"):
            raise ValueError("direction must be 'cohomology' or 'homology'")
        return HKTable(self, module, direction, tmax)

    def higher(self, table: "HKTable") -> "HigherTable":
        return HigherTable(self, table)


def _cap_module(z: Chain, f: Cochain) -> GradedBimodule:
    if f.module.is_regular:
        return z.module
    if z.module.is_regular:
        return f.module
    raise PairingUnsupported("cap needs A-coefficients on at least one side")


class HKSlice:
    """One (p, t) slice: space basis, homology dimension, representatives,
    and a solver expressing cocycles in class coordinates."""

    __slots__ = ("p", "t", "w", "pairs", "index", "dim", "reps", "edge", "_ech")

    def __init__(self, p, t, w, pairs, index, dim, reps, edge, ech):
        self.p = p
        self.t = t
        self.w = w
        self.pairs = pairs
        self.index = index
        self.dim = dim
        self.reps = reps
        self.edge = edge
        self._ech = ech

    @property
    def space_dim(self):
        return len(self.pairs)

    def class_coords(self, vec: dict):
        """Class coordinates of a cycle/cocycle given in slice coordinates;
        None when the vector is not even in ker + im (not a cycle)."""
        return self._ech.express(vec)


class HKTable:
    """(Co)homology of the Koszul (co)chain complex, sliced by (p, t)."""

    def __init__(self, calc: Calculus, module: GradedBimodule, direction: str,
                 tmax: int | None):
        self.calc = calc
        self.module = module
        self.direction = direction
        W = calc.W
        self.pmax = W.top_nonzero()
        self.wmax = module.wmax if tmax is None else min(module.wmax, tmax + self.pmax)
        self.tmax = self.wmax if tmax is None else tmax
        self.slices: dict = {}
        self._build()

    # slice space: list of pairs; cochain pairs (iw, im), chain pairs (im, iw)

    def _space(self, p: int, w: int):
        calc, module = self.calc, self.module
        if p < 0 or p > calc.W.pmax or w < module.wmin or w > module.wmax:
            return []
        mblocks = module.block_indices(w)
        pairs = []
        if self.direction == "cohomology":
            for a in range(calc.W.dim(p)):
                for im in mblocks.get(calc.W.block(p, a), ()):
                    pairs.append((a, im))
        else:
            widx = calc.W.block_indices(p)
            for im in range(module.dim(w)):
                i, j = module.block(w, im)
                for a in widx.get((j, i), ()):
                    pairs.append((im, a))
        return pairs

    def _flatten_cochain(self, f: Cochain, index) -> dict:
        out = {}
        for a, col in enumerate(f.cols):
            for im, c in col.items():
                out[index[(a, im)]] = c
        return out

    def _flatten_chain(self, z: Chain, index) -> dict:
        return {index[k]: c for k, c in z.coords.items()}

    def _diff_matrix(self, p: int, t: int, src_pairs, src_index, dst_index):
        """Matrix of the slice differential out of (p, t)."""
        calc, module = self.calc, self.module
        field = calc.field
        ncols = len(src_pairs)
        nrows = len(dst_index)
        entries = {}
        for col, pair in enumerate(src_pairs):
            if self.direction == "cohomology":
                a, im = pair
                f = calc.zero_cochain(p, t + p, module)
                f.cols[a][im] = field.one
                img = calc.b_cochain(f)
                vec = self._flatten_cochain(img, dst_index)
            else:
                im, a = pair
                z = Chain(p, t - p, module, {(im, a): field.one})
                img = calc.b_chain(z)
                vec = self._flatten_chain(img, dst_index)
            for i, c in vec.items():
                entries[(i, col)] = c
        return Matrix.from_entries(nrows, ncols, entries, field)

    def _build(self):
        calc, module = self.calc, self.module
        if self.direction == "cohomology":
            trange = range(-self.pmax, self.wmax + 1)
        else:
            trange = range(module.wmin, self.wmax + 1)
        if self.tmax is not None:
            trange = [t for t in trange if t <= self.tmax]
        for t in trange:
            spaces = {}
            indexes = {}
            for p in range(0, self.pmax + 1):
                w = t + p if self.direction == "cohomology" else t - p
                pairs = self._space(p, w)
                spaces[p] = pairs
                indexes[p] = {lab: i for i, lab in enumerate(pairs)}
            mats = {}
            for p in range(0, self.pmax + 1):
                if not spaces[p]:
                    continue
                if self.direction == "cohomology":
                    dst = indexes.get(p + 1, {})
                    # the outgoing differential needs W_{p+1} within the
                    # computed range and M_{w+1} within the truncation
                    can = p + 1 <= calc.W.pmax and (
                        t + p + 1 <= module.wmax or calc.W.dim(p + 1) == 0)
                else:
                    dst = indexes.get(p - 1, {})
                    can = p == 0 or (t - p + 1 <= module.wmax)
                if can:
                    mats[p] = self._diff_matrix(p, t, spaces[p], indexes[p], dst)
            for p in range(0, self.pmax + 1):
                pairs = spaces[p]
                if not pairs:
                    continue
                w = t + p if self.direction == "cohomology" else t - p
                out_m = mats.get(p)
                edge = out_m is None
                in_key = p - 1 if self.direction == "cohomology" else p + 1
                in_m = mats.get(in_key)
                ech = TaggedEchelon(calc.field)
                if in_m is not None:
                    for col in in_m.columns():
                        ech.add(col)
                if edge:
                    # truncation hides the outgoing map: report the space
                    # modulo boundaries and flag it
                    ker_rows = [{i: calc.field.one} for i in range(len(pairs))]
                else:
                    ker_rows = kernel_basis(out_m).basis.rows
                reps = []
                for v in ker_rows:
                    piv = ech.add(v, tag=len(reps))
                    if piv is not None:
                        reps.append(ech.rows[-1][1])
                self.slices[(p, t)] = HKSlice(
                    p, t, w, pairs, indexes[p], len(reps), reps, edge, ech)

    def dim(self, p: int, t: int) -> int:
        s = self.slices.get((p, t))
        return s.dim if s else 0

    def slice(self, p: int, t: int) -> HKSlice | None:
        return self.slices.get((p, t))

    def classes(self, p: int, t: int):
        s = self.slices.get((p, t))
        if not s:
            return []
        return [HKClass(self, p, t, {i: self.calc.field.one}) for i in range(s.dim)]

    def rows(self):
        out = []
        for (p, t) in sorted(self.slices):
            s = self.slices[(p, t)]
            out.append({"p": p, "t": t, "dim": s.dim, "edge": s.edge})
        return out

    def class_of_cochain(self, f: Cochain) -> "HKClass":
        t = f.t
        s = self.slices.get((f.p, t))
        if s is None:
            if f.is_zero():
                return HKClass(self, f.p, t, {})
            raise ValueError(f"no computed slice at (p={f.p}, t={t})")
        coords = s.class_coords(self._flatten_cochain(f, s.index))
        if coords is None:
            raise ValueError("element is not a cocycle in its slice")
        return HKClass(self, f.p, t, coords)

    def class_of_chain(self, z: Chain) -> "HKClass":
        t = z.t
        s = self.slices.get((z.p, t))
        if s is None:
            if z.is_zero():
                return HKClass(self, z.p, t, {})
            raise ValueError(f"no computed slice at (p={z.p}, t={t})")
        coords = s.class_coords(self._flatten_chain(z, s.index))
        if coords is None:
            raise ValueError("element is not a cycle in its slice")
        return HKClass(self, z.p, t, coords)

    def representative(self, cls: "HKClass"):
        """A cocycle/cycle representative of the class, as Cochain/Chain."""
        calc, module = self.calc, self.module
        s = self.slices.get((cls.p, cls.t))
        if s is None:
            assert cls.is_zero()
            if self.direction == "cohomology":
                return calc.zero_cochain(cls.p, cls.t + cls.p, module)
            return Chain(cls.p, cls.t - cls.p, module, {})
        field = calc.field
        vec: dict = {}
        for i, c in cls.coords.items():
            vec_add_scaled(field, vec, c, s.reps[i])
        if self.direction == "cohomology":
            f = calc.zero_cochain(cls.p, s.w, module)
            for pos, c in vec.items():
                a, im = s.pairs[pos]
                f.cols[a][im] = c
            return f
        coords = {s.pairs[pos]: c for pos, c in vec.items()}
        return Chain(cls.p, s.w, module, coords)


class HKClass:
    """A (co)homology class: coordinates in a slice's representative basis."""

    __slots__ = ("table", "p", "t", "coords")

    def __init__(self, table: HKTable, p: int, t: int, coords: dict):
        self.table = table
        self.p = p
        self.t = t
        self.coords = {k: v for k, v in coords.items() if v}

    def is_zero(self):
        return not self.coords

    def representative(self):
        return self.table.representative(self)

    def __eq__(self, other):
        return (isinstance(other, HKClass) and self.table is other.table
                and (self.p, self.t) == (other.p, other.t)
                and self.coords == other.coords)

    def __repr__(self):
        return f"HKClass(p={self.p}, t={self.t}, coords={self.coords})"


def cup_classes(a: HKClass, b: HKClass, target: HKTable) -> HKClass:
    """Cup product on classes, expressed in the target table."""
    calc = target.calc
    fa = a.representative()
    fb = b.representative()
    return target.class_of_cochain(calc.cup(fa, fb))


def cap_classes(z: HKClass, f: HKClass, side: str, target: HKTable) -> HKClass:
    """Cap action of a cohomology class on a homology class."""
    calc = target.calc
    zc = z.representative()
    fc = f.representative()
    res = calc.cap_left(fc, zc) if side == "left" else calc.cap_right(zc, fc)
    return target.class_of_chain(res)


class HigherTable:
    """Homology of the class-level action of the fundamental cocycle.

    The induced differential must square to zero on classes; if it does
    not (conceivable in bad characteristic), SquareNotZero carries the
    offending slice.
    """

    def __init__(self, calc: Calculus, table: HKTable):
        self.calc = calc
        self.table = table
        self.direction = table.direction
        self.dims: dict = {}
        self._build()

    def _build(self):
        calc, table = self.calc, self.table
        field = calc.field
        e = calc.fundamental_cocycle()
        step = 1 if table.direction == "cohomology" else -1
        module = table.module

        def clean(p, t):
            """Slice usable for class arithmetic: absent (genuinely zero
            within range) or computed without a truncation edge."""
            s = table.slices.get((p, t))
            return s is None or not s.edge

        def steppable(p, t, w):
            # stepping with the degree-1 cocycle raises both p and w by 1
            # on cochains, lowers p and raises w on chains
            if table.direction == "cohomology":
                return p + 1 <= calc.W.pmax and (
                    t + p + 1 <= module.wmax or calc.W.dim(p + 1) == 0)
            return p == 0 or (t - p + 1 <= module.wmax)

        mats = {}
        for (p, t), s in sorted(table.slices.items()):
            if s.edge or not steppable(p, t, s.w):
                continue
            dst = table.slices.get((p + step, t))
            if dst is not None and dst.edge:
                continue
            entries = {}
            for i in range(s.dim):
                cls = HKClass(table, p, t, {i: field.one})
                rep = table.representative(cls)
                if table.direction == "cohomology":
                    img = calc.cup(e, rep)
                    out = table.class_of_cochain(img) if dst else None
                else:
                    img = calc.cap_left(e, rep)
                    out = table.class_of_chain(img) if dst else None
                if out is None:
                    assert dst is not None or img.is_zero()
                    continue
                for j, c in out.coords.items():
                    entries[(j, i)] = c
            mats[(p, t)] = Matrix.from_entries(
                dst.dim if dst else 0, s.dim, entries, field)
        # square-zero on classes is verified, not assumed
        for (p, t), m in mats.items():
            nxt = mats.get((p + step, t))
            if nxt is not None and m.ncols and nxt.ncols:
                if not nxt.matmul(m).is_zero():
                    raise SquareNotZero(
                        f"induced differential fails d.d=0 at (p={p}, t={t})")
        for (p, t), s in table.slices.items():
            out_m = mats.get((p, t))
            if out_m is None:
                continue
            src_key = (p - step, t)
            if not clean(*src_key):
                continue
            in_m = mats.get(src_key)
            if in_m is None:
                if table.slices.get(src_key) is not None:
                    continue  # incoming classes exist but map unknown
                in_m = Matrix.zero(s.dim, 0, field)
            dim, _ = homology(in_m, out_m)
            self.dims[(p, t)] = dim

    def dim(self, p: int, t: int) -> int:
        return self.dims.get((p, t), 0)

    def total(self, p: int) -> int:
        return sum(d for (pp, _t), d in self.dims.items() if pp == p)

    def rows(self):
        return [{"p": p, "t": t, "dim": d}
                for (p, t), d in sorted(self.dims.items())]
