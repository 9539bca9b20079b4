"""Finite quivers and monomial bases of path spaces.

A path of length m is stored as a tuple of arrow indices read in product
order: the word ``(a_1, ..., a_m)`` denotes the tensor/product
``a_1 a_2 ... a_m``, which is nonzero exactly when the source vertex of
each ``a_i`` equals the target vertex of ``a_{i+1}``.  The word as a whole
runs from source ``s(a_m)`` to target ``t(a_1)``, so left multiplication
by a vertex idempotent picks out the target and right multiplication the
source.  Length-0 paths are the vertex idempotents themselves.
"""

from __future__ import annotations

__all__ = ["Quiver", "PathBasis"]


class Quiver:
    """A finite quiver: named vertices and named arrows with endpoints."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        if not self.vertices:
            raise ValueError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        names = []
        src = []
        tgt = []
        for name, s, t in arrows:
            if s not in self.vertex_index or t not in self.vertex_index:
                raise ValueError(f"arrow {name!r} references unknown vertex")
            names.append(name)
            src.append(self.vertex_index[s])
            tgt.append(self.vertex_index[t])
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        self.arrow_names = tuple(names)
        self.arrow_index = {a: i for i, a in enumerate(names)}
        self.source = tuple(src)
        self.target = tuple(tgt)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrow_names)

    def path_name(self, arrows) -> str:
        if not arrows:
            return "(e)"
        return ".".join(self.arrow_names[a] for a in arrows)

    def __repr__(self):
        return f"Quiver({list(self.vertices)}, {self.n_arrows} arrows)"


class PathBasis:
    """The ordered monomial basis of length-m paths of a quiver.

    Each basis element is a label ``(target, source, arrows)``; the order
    is lexicographic in the arrow index tuples (vertex order at length 0),
    which fixes every downstream basis deterministically.
    """

    def __init__(self, quiver: Quiver, m: int, prev: "PathBasis | None" = None):
        self.quiver = quiver
        self.m = m
        if m == 0:
            items = [(i, i, ()) for i in range(quiver.n_vertices)]
        elif m == 1:
            items = [
                (quiver.target[a], quiver.source[a], (a,))
                for a in range(quiver.n_arrows)
            ]
        else:
            shorter = prev if prev is not None and prev.m == m - 1 else PathBasis(quiver, m - 1)
            items = []
            for t, s, arrows in shorter.items:
                for a in range(quiver.n_arrows):
                    if quiver.target[a] == s:
                        items.append((t, quiver.source[a], arrows + (a,)))
        self.items = items
        # arrow tuples identify paths only for m >= 1; at length 0 the
        # vertex does, so no tuple index is exposed there
        self.index = {} if m == 0 else {label[2]: k for k, label in enumerate(items)}

    def __len__(self):
        return len(self.items)

    def block(self, k):
        t, s, _ = self.items[k]
        return (t, s)
